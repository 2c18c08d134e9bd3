"""Candidate searches: seed transport, verdicts, frozen reference reports."""

import cmath
import math

import numpy as np
import pytest

from henon_rings.henon import PlanarPoint, frame_from_mod
from henon_rings.params import params_from_resonant
from henon_rings.search import (
    VERDICT_CANDIDATE,
    VERDICT_FAILED,
    VERDICT_INCONCLUSIVE,
    approximate_rotation,
    find_exotic,
    find_herman,
    phi_y_leading,
    seed_chain,
    sweep_exotic,
)
from henon_rings.spectral import CONV_UNHAT, convert, evaluate

J = cmath.exp(2j * math.pi / 3.0)


def test_approximate_rotation_formula():
    assert approximate_rotation(0.5, 1e-2, -0.8) == pytest.approx(-4e-3)
    assert approximate_rotation(1j, 1e-2, -0.8) == pytest.approx(0.0, abs=1e-15)


def test_phi_y_leading_is_near_identity():
    small = phi_y_leading(1e-8, 1e-8)
    assert abs(small.z - 1e-8) < 1e-14
    assert abs(small.w - 1e-8) < 1e-14


def test_seed_chain_lands_in_map_frame(orbit12):
    mbeta, delta = 1.0, 1e-2
    p = params_from_resonant(1.0, mbeta, delta)
    mod_seed, map_seed = seed_chain(orbit12, p, mbeta, delta)
    want = frame_from_mod(mod_seed, p)
    assert abs(map_seed.z - want.z) < 1e-14
    assert abs(map_seed.w - want.w) < 1e-14
    # scale structure: z picks up d, w picks up d^{2/3}
    a, b = evaluate(convert(orbit12, CONV_UNHAT), 0.0)
    d = math.pi * math.sqrt(3.0) * mbeta * delta
    assert abs(mod_seed.z) == pytest.approx(abs(d * a), rel=0.3)
    assert abs(mod_seed.w) == pytest.approx(abs(d ** (2.0 / 3.0) * b), rel=0.3)


class TestFindExotic:
    def test_candidate_at_the_reference_point(self):
        rep = find_exotic(1.0, 1.0, 0.01, 3000)
        assert rep.target == "exotic"
        assert rep.verdict == VERDICT_CANDIDATE
        assert rep.trace is not None and rep.trace.status.bounded
        assert rep.im_g_residual < 1e-10
        assert rep.trace.rotation_estimate == pytest.approx(
            -0.008481824637610104, abs=1e-6)
        assert rep.trace.attraction_gap == pytest.approx(
            0.002094338477947892, rel=1e-3)

    def test_rotation_tracks_the_prediction(self):
        rep = find_exotic(1.0, 1.0, 0.01, 5000)
        want = approximate_rotation(1.0, 0.01, rep.orbit.g)
        got = rep.trace.rotation_estimate
        assert got == pytest.approx(want, rel=0.05)

    def test_invalid_delta_fails_cleanly(self):
        rep = find_exotic(1.0, 1.0, -0.01, 1000)
        assert rep.verdict == VERDICT_FAILED
        assert rep.trace is None
        assert rep.reason


class TestFindHerman:
    MBETA0 = abs(0.311841 + 3.333e-4j)
    PHI = math.atan2(1.0 / 3e3, 0.311841)

    def test_candidate_with_enough_iterations(self):
        rep = find_herman(self.MBETA0, self.PHI, 1e-3, 0.4 - 0.0071j,
                          n_iters=30000)
        assert rep.verdict == VERDICT_CANDIDATE
        assert rep.im_g_residual < 1e-9
        assert abs(rep.params.tau - (0.4002581934599415 - 0.0071j)) < 1e-9
        assert rep.trace.rotation_estimate == pytest.approx(-0.0002488,
                                                            abs=2e-5)

    def test_short_run_is_inconclusive(self):
        rep = find_herman(self.MBETA0, self.PHI, 1e-3, 0.4 - 0.0071j,
                          n_iters=5000)
        assert rep.verdict == VERDICT_INCONCLUSIVE
        assert rep.reason

    def test_phi_window_is_validated(self):
        rep = find_herman(0.3, 0.2, 1e-3, 0.4)
        assert rep.verdict == VERDICT_FAILED
        rep = find_herman(0.3, -0.01, 1e-3, 0.4)
        assert rep.verdict == VERDICT_FAILED


def test_sweep_collects_one_report_per_tau():
    taus = [1.0, 1.0 + 0.05j]
    reports = sweep_exotic(1.0, taus, 0.01, 1000)
    assert len(reports) == 2
    for rep, tau in zip(reports, taus):
        if rep.verdict != VERDICT_FAILED:
            assert rep.params is not None
            assert abs(rep.params.tau - tau) < 1e-12
