"""Registry of the catalogued parameter sets.

The raw registry (data/presets.json, overridable through the
HENON_RINGS_PRESETS environment variable) keeps the published values
verbatim; build_preset turns an entry into runnable objects.  Direct
entries carry (beta, c) and a map-frame seed.  Chart entries carry
(tau, mbeta, delta) plus a seed quoted in figure units of the dilated
model frame; both the figure unit and the dilation are undone here
before iteration.
"""

import cmath
import json
import math
import os
from dataclasses import dataclass, replace
from importlib import resources
from typing import Optional

from .henon import MAP_HENON, PlanarPoint
from .params import Params, params_from_beta_c, params_from_resonant
from .serialize import orbit_from_dict


@dataclass(frozen=True)
class Preset:
    name: str
    title: str
    map: str
    n: int
    params: Params
    seed: PlanarPoint
    projections: tuple
    display: dict
    rotation: Optional[float] = None


def _data_text(name):
    return resources.files("henon_rings").joinpath("data/" + name).read_text()


def load_registry(path=None):
    """The raw preset dictionaries, keyed by name."""
    if path is None:
        path = os.environ.get("HENON_RINGS_PRESETS")
    if path is None:
        return json.loads(_data_text("presets.json"))
    with open(path) as fh:
        return json.load(fh)


def build_preset(name, raw):
    kind = raw.get("map", MAP_HENON)
    if "tau" in raw:
        tau = complex(*raw["tau"])
        mbeta = complex(*raw["mbeta"])
        delta = float(raw["delta"])
        params = params_from_resonant(tau, mbeta, delta)
        # picture_seed is quoted in figure units; picture_unit converts to
        # the dilated model frame, and the anisotropic dilation
        # diag(d, d^{2/3}) takes that down to diagonal-frame coordinates.
        unit = float(raw.get("picture_unit", 1.0))
        zs = unit * complex(*raw["picture_seed"]["z"])
        ws = unit * complex(*raw["picture_seed"]["w"])
        d = cmath.pi * math.sqrt(3.0) * mbeta * delta
        seed = PlanarPoint(d * zs, d ** (2.0 / 3.0) * ws)
    else:
        if "pi_beta" in raw:
            beta = complex(raw["pi_beta"] / math.pi)
        else:
            beta = complex(*raw["beta"])
        c = complex(*raw["c"])
        # reconstructed chart, but dynamics at the quoted values exactly
        params = replace(params_from_beta_c(beta, c), beta=beta, c=c)
        seed = PlanarPoint(complex(*raw["seed"]["z"]),
                           complex(*raw["seed"]["w"]))
    return Preset(name=name, title=raw.get("title", name), map=kind,
                  n=int(raw["n"]), params=params, seed=seed,
                  projections=tuple(tuple(p) for p in raw.get("projections", ())),
                  display=dict(raw.get("display", {})),
                  rotation=raw.get("rotation"))


def get_preset(name, path=None):
    registry = load_registry(path)
    if name not in registry:
        raise KeyError("unknown preset %r (have: %s)"
                       % (name, ", ".join(sorted(registry))))
    return build_preset(name, registry[name])


def preset_names(path=None):
    return sorted(load_registry(path))


def load_golden_orbit():
    """The shipped converged record of the canonical solve."""
    return orbit_from_dict(json.loads(_data_text("golden_orbit_tau1.json")))
