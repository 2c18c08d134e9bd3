"""Shipped figure presets and the bundled reference orbit."""

import json
import math

import numpy as np
import pytest

from henon_rings.henon import classify_orbit
from henon_rings.presets import (
    get_preset,
    load_golden_orbit,
    load_registry,
    preset_names,
)
from henon_rings.spectral import residual

EXPECTED_NAMES = {"fig1", "fig6", "fig7", "fig8", "ushiki"}


def test_registry_names():
    assert set(preset_names()) == EXPECTED_NAMES


def test_unknown_preset():
    with pytest.raises(KeyError):
        get_preset("fig99")


def test_direct_entries_keep_raw_beta_c():
    reg = load_registry()
    checked = 0
    for name, raw in reg.items():
        if "beta" not in raw:
            continue
        p = get_preset(name)
        assert p.params.beta == complex(*raw["beta"]), name
        assert p.params.c == complex(*raw["c"]), name
        checked += 1
    assert checked >= 3


def test_chart_entry_seed_scaling():
    raw = load_registry()["fig6"]
    p = get_preset("fig6")
    mbeta = complex(*raw["mbeta"])
    d = math.pi * math.sqrt(3.0) * mbeta * raw["delta"]
    unit = raw["picture_unit"]
    assert abs(p.seed.z - d * unit * complex(*raw["picture_seed"]["z"])) < 1e-15
    assert abs(p.seed.w
               - d ** (2.0 / 3.0) * unit * complex(*raw["picture_seed"]["w"])) < 1e-15


def test_ushiki_angle_convention():
    p = get_preset("ushiki")
    assert abs(p.params.beta - 1.02773 / math.pi) < 1e-15


@pytest.mark.parametrize("name", sorted(EXPECTED_NAMES))
def test_every_preset_stays_bounded(name, preset_trace):
    p, tr = preset_trace(name)
    assert tr.status.bounded, (name, tr.status)
    assert len(tr) == p.n + 1


def test_fig8_rotation_matches_the_quoted_value(preset_trace):
    p, tr = preset_trace("fig8")
    assert p.rotation is not None
    cls = classify_orbit(tr)
    assert abs(cls.rotation_estimate - p.rotation) < 0.2 * abs(p.rotation)


def test_fig7_attracts_nearby_orbits(preset_trace):
    from henon_rings.henon import attraction_thirds

    _, tr = preset_trace("fig7")
    first, last = attraction_thirds(tr)
    assert last < 0.8 * first


def test_preset_metadata_shape():
    for name in EXPECTED_NAMES:
        p = get_preset(name)
        assert p.map in ("henon", "henon-mod")
        assert p.n >= 1000
        assert isinstance(p.display, dict)
        assert len(p.projections) >= 1


def test_registry_override(tmp_path, monkeypatch):
    alt = {"tiny": {"title": "t", "map": "henon", "n": 1200,
                    "beta": [0.33121126255050164, 0.0],
                    "c": [0.1994292600365969, 0.0],
                    "seed": {"z": [0.6, 0.0], "w": [0.6, 0.0]},
                    "projections": [["re_z", "re_w"]], "display": {}}}
    path = tmp_path / "reg.json"
    path.write_text(json.dumps(alt))
    monkeypatch.setenv("HENON_RINGS_PRESETS", str(path))
    assert preset_names() == ["tiny"]
    p = get_preset("tiny")
    assert p.n == 1200


def test_golden_orbit_solves_the_balance_system():
    o = load_golden_orbit()
    assert residual(o).l1 < 1e-10
    assert abs(o.g - (-0.8345538969681955)) < 1e-9
    assert o.N == 12
