"""Resonant normalization of the diagonalized map through degree 4."""

import math

import pytest

from henon_rings.bnf import (
    bnf_normal_form_jet,
    cohomological_solve,
    hmod_jet,
    resonant_bnf,
    ushiki_resonance_mask,
)
from henon_rings.errors import SmallDivisor
from henon_rings.henon import PlanarPoint, henon_mod_step
from henon_rings.jets import Jet2, jet_compose, lie_flow_map
from henon_rings.params import mu_delta, params_from_resonant

SQRT3 = math.sqrt(3.0)


def test_hmod_jet_matches_the_map():
    p = params_from_resonant(1.0 + 0.2j, 0.8, 1e-2)
    j1, j2 = hmod_jet(p)
    for q in (PlanarPoint(0.02, -0.01), PlanarPoint(0.01j, 0.03 + 0.01j)):
        step = henon_mod_step(q, p)
        assert abs(j1.evaluate(q.z, q.w) - step.z) < 1e-14
        assert abs(j2.evaluate(q.z, q.w) - step.w) < 1e-14


def test_resonance_mask():
    assert ushiki_resonance_mask(2, 1)
    assert ushiki_resonance_mask(0, 4)
    assert ushiki_resonance_mask(0, 1)
    assert not ushiki_resonance_mask(3, 0)
    assert not ushiki_resonance_mask(1, 2)


def test_quadratic_coefficient_at_resonance():
    # b21 = i / sqrt(3) exactly when delta = 0
    p = params_from_resonant(1.0, 1.0, 0.0)
    b21, b04, gens = resonant_bnf(p)
    assert abs(b21 - 1j / SQRT3) < 1e-14
    assert len(gens) == 2


def test_quartic_coefficient_at_resonance():
    # -4 i b04 equals the quartic invariant -(2/3)/sqrt(3)
    p = params_from_resonant(1.0, 1.0, 0.0)
    _, b04, _ = resonant_bnf(p)
    nu = -(2.0 / 3.0) / SQRT3
    assert abs(-4j * b04 - nu) < 1e-10


def test_b21_tracks_mu_exactly_off_resonance():
    p = params_from_resonant(1.0 + 0.3j, 0.9, 1e-2)
    b21, _, _ = resonant_bnf(p)
    assert abs(b21 - 1j * mu_delta(p) * p.lambda1) < 1e-13


def test_order_three_stops_early():
    p = params_from_resonant(1.0, 1.0, 0.0)
    b21_3, b04_3, gens = resonant_bnf(p, order=3)
    b21_4, b04_4, _ = resonant_bnf(p, order=4)
    assert len(gens) == 1
    assert abs(b21_3 - b21_4) < 1e-14
    with pytest.raises(ValueError):
        resonant_bnf(p, order=5)


def test_normal_form_kills_non_resonant_sites():
    p = params_from_resonant(1.0, 1.0, 0.0)
    F, _ = bnf_normal_form_jet(p)
    for k in range(5):
        for l in range(5 - k):
            if 3 <= k + l <= 4 and not ushiki_resonance_mask(k, l):
                assert abs(F[k, l]) < 1e-9, (k, l)


def test_generators_start_at_degree_three():
    p = params_from_resonant(1.0, 1.0, 1e-3)
    _, _, gens = resonant_bnf(p)
    for d, Y in zip((3, 4), gens):
        for k in range(Y.max_degree + 1):
            for l in range(Y.max_degree + 1 - k):
                if k + l != d:
                    assert Y.coeffs[k, l] == 0


def test_conjugation_identity_at_small_amplitude():
    # h^mod(Phi(q)) = Phi(N(q)) through the normalized degree, so the
    # pointwise mismatch at amplitude eps is O(eps^5)
    p = params_from_resonant(1.0, 1.0, 1e-3)
    _, _, gens = resonant_bnf(p)
    N = hmod_jet(p)
    for Y in gens:
        N = jet_compose(lie_flow_map(-Y), jet_compose(N, lie_flow_map(Y)))
    phi = jet_compose(lie_flow_map(gens[0]), lie_flow_map(gens[1]))
    for q in (PlanarPoint(0.002, 0.001), PlanarPoint(0.0015j, -0.001 + 0.001j)):
        img = PlanarPoint(phi[0].evaluate(q.z, q.w), phi[1].evaluate(q.z, q.w))
        lhs = henon_mod_step(img, p)
        nq = (N[0].evaluate(q.z, q.w), N[1].evaluate(q.z, q.w))
        rhs = PlanarPoint(phi[0].evaluate(*nq), phi[1].evaluate(*nq))
        assert abs(lhs.z - rhs.z) < 1e-12
        assert abs(lhs.w - rhs.w) < 1e-12


def test_small_divisor_guard():
    # unmasking a truly resonant site at delta = 0 hits a zero divisor
    p = params_from_resonant(1.0, 1.0, 0.0)
    G = Jet2.from_terms([(2, 1, 1.0)])
    with pytest.raises(SmallDivisor):
        cohomological_solve(G, p.alpha, p.beta, resonant_mask=lambda k, l: False)


def test_cohomological_split_is_a_partition(rng):
    p = params_from_resonant(1.0, 1.0, 1e-2)
    G = Jet2.from_terms([(k, l, complex(rng.normal(), rng.normal()))
                         for k in range(4) for l in range(4 - k)
                         if k + l >= 3])
    Y, res = cohomological_solve(G, p.alpha, p.beta)
    for k in range(4):
        for l in range(4 - k):
            if ushiki_resonance_mask(k, l):
                assert Y.coeffs[k, l] == 0
                assert res.coeffs[k, l] == G.coeffs[k, l]
            else:
                assert res.coeffs[k, l] == 0
