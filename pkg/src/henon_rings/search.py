"""Locate map parameters and seeds carrying rotation domains or rings.

Two recipes built from the same pipeline.  The conservative one solves the
model flow's periodic orbit at real (tau, mbeta), transports its t = 0
point through the coordinate chain into the quadratic map's frame, and
iterates; boundedness plus a rotation readout is the candidate signature.
The dissipative one first runs an outer Newton on Re tau so the composed
frequency e^{i phi} g(tau) comes out real (an invariant-circle rotation
number must be real), then does the same transport with the complex
multiplier direction and demands the attraction signature on top.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Optional

from .errors import NoConvergence, TooShort
from .henon import (MAP_HENON, MAP_HENON_MOD, OrbitTrace, PlanarPoint,
                    attraction_thirds, classify_orbit, frame_from_mod, iterate)
from .params import Params, params_from_resonant
from .spectral import (CONV_UNHAT, DEFAULT_N, DEFAULT_W1, FourierOrbit, convert,
                       evaluate, initial_guess, newton_solve)

TARGET_EXOTIC = "exotic"
TARGET_HERMAN = "herman"

VERDICT_CANDIDATE = "candidate-found"
VERDICT_INCONCLUSIVE = "inconclusive"
VERDICT_FAILED = "failed"

OUTER_TOL = 1e-10
OUTER_STEP = 1e-4
ATTRACTION_DROP = 0.2

# Leading-order coefficients of the cubic conjugation generator at the
# resonance (mu -> 1/sqrt(3)); enough for seeding since the point is
# already O(delta^{2/3}) small.
_J = cmath.exp(2j * cmath.pi / 3.0)
_MU0 = 1.0 / math.sqrt(3.0)
_Y30 = (1j * _MU0 / 3.0) / (1.0 - _J)
_Y12 = 1j * _MU0 * _J / (_J - 1.0)
_Y03 = 1j * (_MU0 / 3.0) * _J * _J / (_J * _J - 1.0)


@dataclass
class SearchReport:
    target: str
    verdict: str
    reason: str = ""
    params: Optional[Params] = None
    orbit: Optional[FourierOrbit] = None
    seed_hint: Optional[PlanarPoint] = None
    im_g_residual: Optional[float] = None
    trace: Optional[OrbitTrace] = None


def approximate_rotation(mbeta, delta, g):
    """Predicted rotation number of the quadratic-map orbit, in turns."""
    return float((delta * (complex(mbeta) * complex(g))).real)


def phi_y_leading(z0, w0):
    """Leading jet of the cubic conjugation flow applied to a small point."""
    zm = z0 + 2.0 * _Y12 * z0 * w0 + 3.0 * _Y03 * w0 * w0
    wm = w0 - 3.0 * _Y30 * z0 * z0 - _Y12 * w0 * w0
    return PlanarPoint(zm, wm)


def seed_chain(orbit, params, mbeta, delta):
    """Transport the model orbit's t = 0 point into map coordinates.

    Scales by the effective small parameter d = pi sqrt(3) mbeta delta
    (z picks up d, w picks up d^{2/3}, principal branch), applies the
    leading-order cubic conjugation, and returns the point both in the
    diagonal frame and in the original map frame.
    """
    a, b = evaluate(convert(orbit, CONV_UNHAT), 0.0)
    d = cmath.pi * math.sqrt(3.0) * complex(mbeta) * delta
    mod_seed = phi_y_leading(d * a, d ** (2.0 / 3.0) * b)
    return mod_seed, frame_from_mod(mod_seed, params)


def _classified(trace):
    if not trace.status.bounded or len(trace) < 500:
        return trace
    cls = classify_orbit(trace)
    trace.rotation_estimate = cls.rotation_estimate
    trace.attraction_gap = cls.attraction_gap
    return trace


def find_exotic(mbeta, tau, delta, n_iters, w1=DEFAULT_W1, N=DEFAULT_N):
    """Conservative recipe: solve, transport, iterate, classify.

    The seed is not auto-tuned; a candidate close to the domain boundary
    may still escape, which comes back as an inconclusive verdict with
    the escape step in the reason.
    """
    if delta <= 0.0:
        return SearchReport(target=TARGET_EXOTIC, verdict=VERDICT_FAILED,
                            reason="delta must be positive")
    params = params_from_resonant(tau, mbeta, delta)
    orbit = newton_solve(initial_guess(tau, w1, "fine", N=N))
    im_g = abs(complex(orbit.g).imag)
    mod_seed, seed = seed_chain(orbit, params, mbeta, delta)
    mod_trace = iterate(mod_seed, MAP_HENON_MOD, params, n_iters)
    trace = _classified(iterate(seed, MAP_HENON, params, n_iters))
    report = SearchReport(target=TARGET_EXOTIC, verdict=VERDICT_INCONCLUSIVE,
                          params=params, orbit=orbit, seed_hint=seed,
                          im_g_residual=im_g, trace=trace)
    if trace.status.bounded:
        report.verdict = VERDICT_CANDIDATE
    else:
        report.reason = "orbit escaped at step %s" % trace.status.step
        if mod_trace.status.bounded:
            report.reason += " (diagonal-frame orbit stayed bounded;" \
                             " the frame change may need a smaller delta)"
    return report


def _g_at(x, y, w1, N):
    return newton_solve(initial_guess(complex(x, y), w1, "fine", N=N)).g


def find_herman(mbeta0, phi, delta, tau_guess, n_iters=5000,
                w1=DEFAULT_W1, N=DEFAULT_N, max_outer=8):
    """Dissipative recipe with the outer Newton on Re tau.

    mbeta0 is the multiplier-direction magnitude, phi its phase in
    [0, 0.1); Im beta > 0 for phi > 0 makes the map dissipative.  The
    outer iteration drives Im(e^{i phi} g(tau)) below 1e-10 (one real
    unknown, Im tau stays at the guess), then the orbit test demands
    boundedness plus a >= 20% attraction-gap drop between the first and
    last thirds.
    """
    if delta <= 0.0:
        return SearchReport(target=TARGET_HERMAN, verdict=VERDICT_FAILED,
                            reason="delta must be positive")
    if not 0.0 <= phi < 0.1:
        return SearchReport(target=TARGET_HERMAN, verdict=VERDICT_FAILED,
                            reason="phi must lie in [0, 0.1)")
    mbeta = mbeta0 * cmath.exp(1j * phi)
    rot = cmath.exp(1j * phi)
    x = complex(tau_guess).real
    y = complex(tau_guess).imag

    orbit = newton_solve(initial_guess(complex(x, y), w1, "fine", N=N))
    resid = float((rot * orbit.g).imag)
    for _ in range(max_outer):
        if abs(resid) < OUTER_TOL:
            break
        gp = _g_at(x + OUTER_STEP, y, w1, N)
        gm = _g_at(x - OUTER_STEP, y, w1, N)
        deriv = float((rot * (gp - gm)).imag / (2.0 * OUTER_STEP))
        if deriv == 0.0:
            raise NoConvergence("outer Newton derivative vanished")
        x -= resid / deriv
        orbit = newton_solve(initial_guess(complex(x, y), w1, "fine", N=N))
        resid = float((rot * orbit.g).imag)
    if abs(resid) >= OUTER_TOL:
        raise NoConvergence("outer Newton stalled at |Im e^{i phi} g| = %.3e"
                            % abs(resid), final_l1=abs(resid))

    params = params_from_resonant(complex(x, y), mbeta, delta)
    mod_seed, seed = seed_chain(orbit, params, mbeta, delta)
    trace = _classified(iterate(seed, MAP_HENON, params, n_iters))
    report = SearchReport(target=TARGET_HERMAN, verdict=VERDICT_INCONCLUSIVE,
                          params=params, orbit=orbit, seed_hint=seed,
                          im_g_residual=abs(resid), trace=trace)
    if not trace.status.bounded:
        report.reason = "orbit escaped at step %s" % trace.status.step
        return report
    try:
        first, last = attraction_thirds(trace)
    except TooShort:
        report.reason = "trace too short for the attraction test"
        return report
    if first > 0.0 and (first - last) / first >= ATTRACTION_DROP:
        report.verdict = VERDICT_CANDIDATE
    else:
        report.reason = ("attraction gap did not drop by %.0f%% "
                         "(first %.3e, last %.3e)"
                         % (100 * ATTRACTION_DROP, first, last))
    return report


def sweep_exotic(mbeta, taus, delta, n_iters, w1=DEFAULT_W1, N=DEFAULT_N):
    """Thin wrapper: one find_exotic per tau, failures kept as reports."""
    out = []
    for tau in taus:
        try:
            out.append(find_exotic(mbeta, tau, delta, n_iters, w1=w1, N=N))
        except NoConvergence as exc:
            out.append(SearchReport(target=TARGET_EXOTIC,
                                    verdict=VERDICT_FAILED, reason=str(exc)))
    return out
