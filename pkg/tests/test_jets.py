"""Jet ring, composition, Lie flows, generating-function correspondence."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from henon_rings.errors import DegreeMismatch
from henon_rings.jets import (
    MAX_DEGREE,
    Jet2,
    canonical_map,
    generating_jet,
    identity_pair,
    jacobian_det_jet,
    jet_compose,
    lie_flow_map,
    poisson,
)

coeff = st.complex_numbers(min_magnitude=0.0, max_magnitude=2.0,
                           allow_nan=False, allow_infinity=False)


def _random_jet(rng, max_degree=MAX_DEGREE, min_total=0):
    out = Jet2(max_degree)
    for k in range(max_degree + 1):
        for l in range(max_degree + 1 - k):
            if min_total <= k + l <= max_degree:
                out.coeffs[k, l] = complex(rng.normal(), rng.normal())
    return out


def test_constructors_and_indexing():
    z, w = Jet2.z(), Jet2.w()
    assert z[1, 0] == 1 and z[0, 1] == 0
    assert w[0, 1] == 1 and w[1, 0] == 0
    f = Jet2.from_terms([(2, 1, 3.0), (0, 4, -1j)])
    assert f[2, 1] == 3.0
    assert f[0, 4] == -1j
    with pytest.raises(ValueError):
        Jet2.from_terms([(4, 3, 1.0)])
    with pytest.raises(ValueError):
        Jet2(7)


def test_truncation_drops_over_degree_products():
    f = Jet2.from_terms([(3, 0, 1.0)], max_degree=4)
    g = Jet2.from_terms([(0, 3, 1.0)], max_degree=4)
    assert (f * g).max_abs() == 0.0


def test_degree_mismatch_is_refused():
    with pytest.raises(DegreeMismatch):
        Jet2.z(3) + Jet2.w(4)


def test_ring_axioms(rng):
    a, b, c = (_random_jet(rng, 4) for _ in range(3))
    lhs = (a * b) * c
    rhs = a * (b * c)
    assert np.max(np.abs(lhs.coeffs - rhs.coeffs)) < 1e-10
    assert np.max(np.abs((a * b).coeffs - (b * a).coeffs)) < 1e-12
    dist = a * (b + c) - (a * b + a * c)
    assert dist.max_abs() < 1e-12


def test_calculus_product_rule(rng):
    a, b = _random_jet(rng, 4), _random_jet(rng, 4)
    # d(ab) and a db + b da agree except where the cap already clipped ab
    lhs = (a * b).dz()
    rhs = a.dz() * b + a * b.dz()
    diff = lhs - rhs
    for k in range(4):
        for l in range(4 - k):
            assert abs(diff.coeffs[k, l]) < 1e-10


def test_poisson_antisymmetry_and_leibniz(rng):
    a, b, c = (_random_jet(rng, 4, min_total=1) for _ in range(3))
    anti = poisson(a, b) + poisson(b, a)
    assert anti.max_abs() < 1e-12
    lhs = poisson(a, b * c)
    rhs = poisson(a, b) * c + b * poisson(a, c)
    diff = lhs - rhs
    for k in range(3):
        for l in range(3 - k):
            assert abs(diff.coeffs[k, l]) < 1e-9


def test_compose_matches_pointwise_evaluation(rng):
    outer = _random_jet(rng, 5)
    inner = (_random_jet(rng, 5, min_total=1), _random_jet(rng, 5, min_total=1))
    composed = outer.compose(*inner)
    for zv, wv in [(0.003, 0.001), (0.002j, -0.004), (-0.001 + 0.002j, 0.003j)]:
        direct = outer.evaluate(inner[0].evaluate(zv, wv),
                                inner[1].evaluate(zv, wv))
        via = composed.evaluate(zv, wv)
        assert abs(direct - via) < 1e-12


def test_compose_with_identity_is_identity(rng):
    f = _random_jet(rng)
    g = f.compose(*identity_pair())
    assert np.max(np.abs(f.coeffs - g.coeffs)) < 1e-14


def test_lie_flow_of_cubic_is_exact():
    # Y = a z^3 generates the shear (z, w - 3 a z^2) exactly
    a = 0.7 - 0.2j
    p1, p2 = lie_flow_map(Jet2.from_terms([(3, 0, a)]))
    want2 = Jet2.w() - Jet2.from_terms([(2, 0, 3 * a)])
    assert np.max(np.abs(p1.coeffs - Jet2.z().coeffs)) < 1e-14
    assert np.max(np.abs(p2.coeffs - want2.coeffs)) < 1e-14


def test_canonical_map_of_cubic_matches_lie_flow():
    F = Jet2.from_terms([(3, 0, 0.4 + 0.1j)])
    a1, a2 = canonical_map(F)
    b1, b2 = lie_flow_map(F)
    assert np.max(np.abs(a1.coeffs - b1.coeffs)) < 1e-13
    assert np.max(np.abs(a2.coeffs - b2.coeffs)) < 1e-13


def test_canonical_map_solves_the_implicit_system(rng):
    F = _random_jet(rng, min_total=3)
    p1, p2 = canonical_map(F)
    z, w = identity_pair()
    r1 = p1 - (z + F.dw().compose(z, p2))
    r2 = w - (p2 + F.dz().compose(z, p2))
    assert r1.max_abs() < 1e-10
    assert r2.max_abs() < 1e-10


def test_canonical_map_has_unit_jacobian(rng):
    F = _random_jet(rng, min_total=3)
    det = jacobian_det_jet(canonical_map(F)) - 1.0
    # exactness holds where the truncation has not clipped the product
    for k in range(MAX_DEGREE - 2):
        for l in range(MAX_DEGREE - 2 - k):
            assert abs(det.coeffs[k, l]) < 1e-9


def test_generating_jet_round_trip(rng):
    F = _random_jet(rng, min_total=3)
    back = generating_jet(canonical_map(F), MAX_DEGREE)
    assert np.max(np.abs(back.coeffs - F.coeffs)) < 1e-9


def test_generating_jet_rejects_non_symplectic():
    # (z + z^2, w) has Jacobian determinant 1 + 2z, so no generating
    # function exists; (z + w^2, w) by contrast is generated by w^3/3
    z, w = identity_pair()
    skew = (z + Jet2.from_terms([(2, 0, 1.0)]), w)
    with pytest.raises(ValueError):
        generating_jet(skew, 4)
    fine = (z + Jet2.from_terms([(0, 2, 1.0)]), w)
    generating_jet(fine, 4)


def test_jet_compose_associativity(rng):
    f = (_random_jet(rng, 4, min_total=1), _random_jet(rng, 4, min_total=1))
    g = (_random_jet(rng, 4, min_total=1), _random_jet(rng, 4, min_total=1))
    h = (_random_jet(rng, 4, min_total=1), _random_jet(rng, 4, min_total=1))
    lhs = jet_compose(jet_compose(f, g), h)
    rhs = jet_compose(f, jet_compose(g, h))
    for a, b in zip(lhs, rhs):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-6 * max(1.0, a.max_abs())
