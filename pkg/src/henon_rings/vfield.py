"""Model vector fields, complex-time flows, and the orbit-seeding chain.

Two cubic fields on C^2, each available with the 2*pi*i factor written out
(TwoPi) or absorbed into the time unit (Absorbed, factor i):

    X_tau  = factor * ((1 - tau) z + z^2/2 - w^3/3,  tau w - z w)
    X_hat  = factor * (tauhat + z + z^2/2 - w^3/3,  -z w)

X_hat is X_tau pushed to hat coordinates z -> z - tau with
tauhat = tau - tau^2/2; both have constant divergence (the factor itself)
and commute with diag(1, j), j = e^{2 pi i/3}.

The integrator is a Dormand-Prince 5(4) embedded pair with PI step-size
control, marched along a user-supplied polyline in complex time (each
segment is parameterized by real arclength, so "time" may head anywhere in
the plane).  No dense output; samples are the accepted step endpoints.
"""

import cmath
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from .errors import StepFailure
from .henon import PlanarPoint

KIND_X_TAU = "X_tau"
KIND_XHAT = "Xhat_tauhat"

CONV_TWO_PI = "TwoPi"
CONV_ABSORBED = "Absorbed"

J_CUBE = cmath.exp(2j * math.pi / 3.0)

SEED_AMPLITUDE = 2.354   # radial amplitude of the locator, fitted in the source numerics


@dataclass(frozen=True)
class ModelField:
    """kind: X_tau | Xhat_tauhat; tau holds tau or tauhat accordingly."""

    kind: str
    tau: complex
    unit_convention: str = CONV_ABSORBED

    def __post_init__(self):
        if self.kind not in (KIND_X_TAU, KIND_XHAT):
            raise ValueError("kind must be %r or %r" % (KIND_X_TAU, KIND_XHAT))
        if self.unit_convention not in (CONV_TWO_PI, CONV_ABSORBED):
            raise ValueError("unit_convention must be %r or %r"
                             % (CONV_TWO_PI, CONV_ABSORBED))

    @property
    def factor(self):
        return 2j * math.pi if self.unit_convention == CONV_TWO_PI else 1j


@dataclass
class FlowResult:
    samples: List[Tuple[complex, PlanarPoint]]
    tolerance_used: float
    rejected_steps: int

    @property
    def final(self):
        return self.samples[-1][1]


def field_components(f, p):
    """The cubic components without the unit factor (plain F)."""
    z, w = complex(p[0]), complex(p[1])
    tau = complex(f.tau)
    if f.kind == KIND_X_TAU:
        return ((1.0 - tau) * z + 0.5 * z * z - w * w * w / 3.0,
                tau * w - z * w)
    return (tau + z + 0.5 * z * z - w * w * w / 3.0, -z * w)


def eval_field(f, p):
    """The field at p, unit factor included."""
    c = f.factor
    f1, f2 = field_components(f, p)
    return PlanarPoint(c * f1, c * f2)


def fixed_points(f):
    """Equilibria of X_hat with linearization eigenvalues.

    Returns five (point, (ev1, ev2)) pairs: the two axis points
    (z_pm, 0), z_pm = -1 +/- sqrt(1 - 2 tauhat) (these are tau - 2 and
    -tau in unhat language), and the three cube-root points
    (0, j^k (3 tauhat)^{1/3}) whose eigenvalue pair g_pm solves
    g^2 - g - 3 tauhat = 0.  Eigenvalues carry the field's unit factor.
    """
    if f.kind != KIND_XHAT:
        raise ValueError("fixed_points is defined for the %r field" % KIND_XHAT)
    tauhat = complex(f.tau)
    c = f.factor
    s = cmath.sqrt(1.0 - 2.0 * tauhat)
    out = []
    for zfp in (-1.0 + s, -1.0 - s):
        out.append((PlanarPoint(zfp, 0.0), (c * (1.0 + zfp), -c * zfp)))
    r = (3.0 * tauhat) ** (1.0 / 3.0)
    disc = cmath.sqrt(1.0 + 12.0 * tauhat)
    gp = (1.0 + disc) / 2.0
    gm = (1.0 - disc) / 2.0
    for k in range(3):
        out.append((PlanarPoint(0.0, r * J_CUBE ** k), (c * gp, c * gm)))
    return out


def seed_locator(mbeta, delta):
    """Henon-frame starting point near the invariant annulus (tau near 1).

    (1/2, 1/2) + 2.354 * (pi sqrt(3) mbeta delta)^{2/3} * (j, 1), principal
    2/3 power.  Valid for delta in (0, 0.05].
    """
    if not 0.0 < delta <= 0.05:
        raise ValueError("delta must be in (0, 0.05], got %r" % (delta,))
    s = (math.pi * math.sqrt(3.0) * complex(mbeta) * delta) ** (2.0 / 3.0)
    a = SEED_AMPLITUDE * s
    return PlanarPoint(0.5 + a * J_CUBE, 0.5 + a)


# --- Dormand-Prince 5(4) -------------------------------------------------

_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
       187 / 2100, 1 / 40)

_ABS_FLOOR = 1e-13
_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
_ALPHA = 0.7 / 5.0     # PI controller exponents (Gustafsson)
_BETA = 0.4 / 5.0


def _rhs(f, y, direction):
    f1, f2 = field_components(f, (y[0], y[1]))
    c = f.factor * direction
    return np.array([c * f1, c * f2])


def flow(f, seed, path, rel_tol=1e-10):
    """Integrate the field from seed along a polyline of complex times.

    path is a sequence of complex time nodes; the state starts at path[0].
    Accepted-step endpoints are recorded as (t, point) samples, beginning
    with the seed.  rel_tol must lie in [1e-13, 1e-6]; the error estimate
    uses rel_tol with an absolute floor of 1e-13 per component.

    Raises StepFailure if the controller drives a step below 1e-14 of the
    current segment length (the flow is blowing up along the path).
    """
    if not 1e-13 <= rel_tol <= 1e-6:
        raise ValueError("rel_tol must be in [1e-13, 1e-6], got %r" % (rel_tol,))
    nodes = [complex(t) for t in path]
    if not nodes:
        raise ValueError("path needs at least one node")

    y = np.array([complex(seed[0]), complex(seed[1])])
    samples = [(nodes[0], PlanarPoint(y[0], y[1]))]
    rejected = 0

    for t0, t1 in zip(nodes[:-1], nodes[1:]):
        seg = t1 - t0
        L = abs(seg)
        if L == 0.0:
            continue
        u = seg / L
        s = 0.0
        h = min(L, max(L * 1e-2, 1e-8))
        err_prev = 1e-4
        k = [None] * 7
        k[0] = _rhs(f, y, u)
        while s < L:
            if L - s <= 1e-14 * L:
                break                  # remaining sliver is below roundoff
            h = min(h, L - s)
            if h < 1e-14 * L:
                raise StepFailure(
                    "step size underflow at s=%.3e of segment length %.3e"
                    % (s, L))
            with np.errstate(over="ignore", invalid="ignore"):
                for i in range(1, 7):
                    yi = y + h * sum(_A[i][m] * k[m] for m in range(i))
                    k[i] = _rhs(f, yi, u)
                y5 = y + h * sum(_B5[m] * k[m] for m in range(7))
                y4 = y + h * sum(_B4[m] * k[m] for m in range(7))
                e = y5 - y4
                sc = _ABS_FLOOR + rel_tol * np.maximum(np.abs(y), np.abs(y5))
                err = math.sqrt(float(np.mean(np.abs(e / sc) ** 2)))
            if math.isfinite(err) and err <= 1.0:
                s += h
                y = y5
                samples.append((t0 + u * s, PlanarPoint(y[0], y[1])))
                k[0] = k[6]            # FSAL: stage 7 sits at the accepted point
                grow = _SAFETY * (err + 1e-16) ** (-_ALPHA) * err_prev ** _BETA
                err_prev = max(err, 1e-16)
                h *= min(_MAX_FACTOR, max(_MIN_FACTOR, grow))
            else:
                rejected += 1
                if math.isfinite(err):
                    h *= max(_MIN_FACTOR, _SAFETY * err ** (-0.2))
                else:
                    h *= _MIN_FACTOR   # overflowed estimate: plain shrink

    return FlowResult(samples=samples, tolerance_used=float(rel_tol),
                      rejected_steps=rejected)
