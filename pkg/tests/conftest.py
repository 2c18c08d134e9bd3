"""Shared fixtures: canonical solves are expensive enough to do once."""

import numpy as np
import pytest

from henon_rings.floquet import floquet_eigensolve
from henon_rings.henon import iterate
from henon_rings.presets import get_preset
from henon_rings.spectral import initial_guess, newton_solve


@pytest.fixture(scope="session")
def orbit7():
    return newton_solve(initial_guess(1.0, 1.4, "fine", N=7))


@pytest.fixture(scope="session")
def orbit12():
    return newton_solve(initial_guess(1.0, 1.4, "fine", N=12))


@pytest.fixture(scope="session")
def orbit17():
    return newton_solve(initial_guess(1.0, 1.4, "fine", N=17))


@pytest.fixture(scope="session")
def fdata12(orbit12):
    return floquet_eigensolve(orbit12)


@pytest.fixture(scope="session")
def preset_trace():
    """Factory returning (preset, trace) pairs, cached per preset name."""
    cache = {}

    def run(name, n=None):
        key = (name, n)
        if key not in cache:
            p = get_preset(name)
            steps = p.n if n is None else n
            cache[key] = (p, iterate(p.seed, p.map, p.params, steps))
        return cache[key]

    return run


@pytest.fixture()
def rng():
    return np.random.default_rng(1729)
