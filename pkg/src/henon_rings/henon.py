"""Quadratic Henon map, a diagonalized conjugate, iteration, classification.

The map acts on C^2 as

    h(x, y) = (e^{i pi beta} (x^2 + c) - e^{2 i pi beta} y,  x)

with constant Jacobian e^{2 i pi beta} and polynomial inverse.  Around a
fixed point (t, t) the linear part has multipliers lambda1, lambda2; the
modified map henon_mod_step is h conjugated by the affine change that
diagonalizes that linear part, and takes the closed form

    (z, w) |-> (lambda1 z, lambda2 w) + i mu (lambda1 z + lambda2 w)^2 (1, -1)

with mu = 1/(2 sin(2 pi alpha)).

classify_orbit estimates a rotation number, an attraction indicator and a
closed-curve score from a stored orbit; the conventions are documented on
the function because they are the contract the search module relies on.
"""

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import DegenerateMultipliers, TooShort
from .params import Params, mu_delta

MAP_HENON = "henon"
MAP_HENON_MOD = "henon-mod"

_MAP_ALIASES = {
    "henon": MAP_HENON,
    "henon-mod": MAP_HENON_MOD,
    "henon_mod": MAP_HENON_MOD,
    "mod": MAP_HENON_MOD,
}


class PlanarPoint(NamedTuple):
    z: complex
    w: complex


@dataclass(frozen=True)
class OrbitStatus:
    """Outcome tag for an iterated orbit.

    kind is one of "bounded", "escaped", "non-finite"; step is the index of
    the offending point for the latter two (the escaping point is stored,
    the non-finite one is not).
    """

    kind: str
    step: Optional[int] = None

    @property
    def bounded(self):
        return self.kind == "bounded"


BOUNDED = OrbitStatus("bounded")


@dataclass
class OrbitTrace:
    points: np.ndarray           # shape (m, 2) complex: columns z, w
    params: Params
    seed: PlanarPoint
    n_steps: int
    status: OrbitStatus
    rotation_estimate: Optional[float] = None
    attraction_gap: Optional[float] = None

    def __len__(self):
        return self.points.shape[0]


class OrbitClassification(NamedTuple):
    rotation_estimate: float
    attraction_gap: float
    closed_curve_score: float


def henon_step(p, beta, c):
    """One forward step of the Henon map with parameters (beta, c)."""
    e1 = cmath.exp(1j * math.pi * beta)
    x, y = complex(p[0]), complex(p[1])
    return PlanarPoint(e1 * (x * x + c) - e1 * e1 * y, x)


def henon_inverse_step(p, beta, c):
    """Exact polynomial inverse of henon_step."""
    e1 = cmath.exp(1j * math.pi * beta)
    x, y = complex(p[0]), complex(p[1])
    return PlanarPoint(y, (e1 * (y * y + c) - x) / (e1 * e1))


def sigma(p):
    """Anti-holomorphic involution (x, y) -> (conj y, conj x).

    For real (beta, c) it conjugates the map to its inverse:
    sigma o h o sigma = h^{-1}.
    """
    return PlanarPoint(complex(p[1]).conjugate(), complex(p[0]).conjugate())


def henon_mod_step(p, params):
    """One step of the diagonalized-frame quadratic map."""
    lam1, lam2 = params.lambda1, params.lambda2
    if abs(lam1 - lam2) < 1e-12:
        raise DegenerateMultipliers(
            "lambda1 and lambda2 coincide to 1e-12; the diagonal frame is singular")
    z, w = complex(p[0]), complex(p[1])
    s = lam1 * z + lam2 * w
    q = 1j * mu_delta(params) * s * s
    return PlanarPoint(lam1 * z + q, lam2 * w - q)


def frame_to_mod(p, params, t=None):
    """Affine change Henon frame -> diagonal frame: L o T_{-t}.

    t defaults to params.t_plus, the resonance-tracked fixed point.  L is
    the inverse of the eigenvector matrix [[lambda1, lambda2], [1, 1]].
    """
    lam1, lam2 = params.lambda1, params.lambda2
    if abs(lam1 - lam2) < 1e-12:
        raise DegenerateMultipliers("frame change undefined for equal multipliers")
    if t is None:
        t = params.t_plus
    d = lam1 - lam2
    v1 = complex(p[0]) - t
    v2 = complex(p[1]) - t
    return PlanarPoint((v1 - lam2 * v2) / d, (-v1 + lam1 * v2) / d)


def frame_from_mod(p, params, t=None):
    """Inverse of frame_to_mod: (z, w) -> (lambda1 z + lambda2 w + t, z + w + t)."""
    lam1, lam2 = params.lambda1, params.lambda2
    if t is None:
        t = params.t_plus
    z, w = complex(p[0]), complex(p[1])
    return PlanarPoint(lam1 * z + lam2 * w + t, z + w + t)


def iterate(seed, map, params, n, escape_radius=10.0):
    """Iterate one of the two maps from seed for up to n steps.

    Returns an OrbitTrace whose status records the outcome: "bounded" after
    n steps, "escaped" at the first point with max(|z|, |w|) beyond
    escape_radius (that point is stored), or "non-finite" at the first
    overflow (that point is dropped).  The seed itself is point 0 and is
    subject to the same checks, so a seed outside the radius yields
    Escaped(0) with a single stored point.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if escape_radius <= 0:
        raise ValueError("escape_radius must be positive")
    kind = _MAP_ALIASES.get(map)
    if kind is None:
        raise ValueError("unknown map %r; use %r or %r" % (map, MAP_HENON, MAP_HENON_MOD))

    if kind == MAP_HENON:
        e1 = cmath.exp(1j * math.pi * params.beta)
        e2 = e1 * e1
        c = params.c

        def step(z, w):
            return e1 * (z * z + c) - e2 * w, z
    else:
        lam1, lam2 = params.lambda1, params.lambda2
        if abs(lam1 - lam2) < 1e-12:
            raise DegenerateMultipliers(
                "lambda1 and lambda2 coincide to 1e-12; the diagonal frame is singular")
        imu = 1j * mu_delta(params)

        def step(z, w):
            s = lam1 * z + lam2 * w
            q = imu * s * s
            return lam1 * z + q, lam2 * w - q

    pts = np.empty((n + 1, 2), dtype=complex)
    z, w = complex(seed[0]), complex(seed[1])
    status = BOUNDED
    count = 0
    for i in range(n + 1):
        if i > 0:
            z, w = step(z, w)
        if not (cmath.isfinite(z) and cmath.isfinite(w)):
            status = OrbitStatus("non-finite", i)
            break
        pts[i] = (z, w)
        count = i + 1
        if max(abs(z), abs(w)) > escape_radius:
            status = OrbitStatus("escaped", i)
            break

    return OrbitTrace(
        points=pts[:count].copy(), params=params,
        seed=PlanarPoint(complex(seed[0]), complex(seed[1])),
        n_steps=n, status=status,
    )


# --- orbit classification ------------------------------------------------
#
# All statistics live in the (Re z, Re w) projection about the trace
# centroid; angles are measured in turns with shortest-arc unwrapping.
# Near the 1:3 resonance the raw angular advance aliases (consecutive
# points hop between three arcs), so when the three-step chord is much
# shorter than the one-step chord the rotation number is taken from the
# every-third-point suborbit and divided by 3.

_FOLD_RATIO = 0.2      # three-step vs one-step chord ratio that flags 1:3 covering
_MIN_POINTS = 500


def _proj(points):
    return points[:, 0].real + 1j * points[:, 1].real


def _mean_advance(q, center):
    ang = np.angle(q - center) / (2.0 * math.pi)
    d = np.diff(ang)
    d -= np.round(d)              # shortest arc, in turns
    return float(np.mean(d))


def classify_orbit(trace):
    """Estimate (rotation_estimate, attraction_gap, closed_curve_score).

    rotation_estimate: mean angular advance per step, in turns, signed.
    attraction_gap: mean |difference of mean radius| between consecutive
    revolutions (a complete-turn binning; the trailing partial revolution
    is discarded); 0.0 when fewer than two complete revolutions resolve.
    closed_curve_score: in [0, 1], high when distant-in-time points come
    back close in space relative to the orbit scale, as on an invariant
    curve; lower on area-filling orbits.

    Raises TooShort when fewer than 500 points are stored.
    """
    pts = trace.points
    n = pts.shape[0]
    if n < _MIN_POINTS:
        raise TooShort("classification needs >= %d points, trace has %d"
                       % (_MIN_POINTS, n))

    q = _proj(pts)
    center = complex(np.mean(q))

    step1 = float(np.mean(np.abs(q[1:] - q[:-1])))
    step3 = float(np.mean(np.abs(q[3:] - q[:-3])))
    if step1 > 0 and step3 / step1 < _FOLD_RATIO:
        rho = _mean_advance(q[::3], center) / 3.0
    else:
        rho = _mean_advance(q, center)

    attraction_gap = _attraction_gap(q, center, rho)
    score = _closed_curve_score(q, center)
    return OrbitClassification(rho, attraction_gap, score)


def _attraction_gap(q, center, rho):
    r = np.abs(q - center)
    nrev = int(abs(rho) * (len(q) - 1))
    if nrev < 2:
        return 0.0
    idx = np.floor(np.abs(rho) * np.arange(len(q))).astype(int)
    means = np.array([r[idx == k].mean() for k in range(nrev)])
    return float(np.mean(np.abs(np.diff(means))))


def _closed_curve_score(q, center):
    n = len(q)
    gap = max(25, n // 50)
    scale = float(np.median(np.abs(q - center)))
    if scale == 0.0:
        return 1.0
    sample = np.linspace(0, n - 1, min(512, n)).astype(int)
    nearest = np.empty(len(sample))
    for j, i in enumerate(sample):
        d = np.abs(q - q[i])
        lo, hi = max(0, i - gap + 1), min(n, i + gap)
        d[lo:hi] = np.inf     # mask the temporal neighbourhood
        nearest[j] = d.min()
    med = float(np.median(nearest))
    return float(math.exp(-med / (0.05 * scale)))


def attraction_thirds(trace):
    """attraction_gap on the first and last third of the trace.

    A drop from first to last is the attracting signature used by the
    Herman-ring search verdict.  Both sub-traces are classified afresh so
    each third gets its own revolution binning.
    """
    pts = trace.points
    n = pts.shape[0]
    third = n // 3
    if third < _MIN_POINTS:
        raise TooShort("thirds test needs >= %d points per third" % _MIN_POINTS)
    first = OrbitTrace(points=pts[:third], params=trace.params, seed=trace.seed,
                       n_steps=third - 1, status=BOUNDED)
    last = OrbitTrace(points=pts[n - third:], params=trace.params, seed=trace.seed,
                      n_steps=third - 1, status=BOUNDED)
    return (classify_orbit(first).attraction_gap,
            classify_orbit(last).attraction_gap)
