"""Parameter algebra for the resonance-centred Henon family.

The family is organised around the 1:3 resonance beta = 1/3.  A parameter
bundle is specified either by the resonant coordinates (tau, mbeta, delta),

    beta  = 1/3 + delta*mbeta
    alpha = 1/6 + delta*(tau - 1/2)*mbeta
    c     = -cos(2*pi*alpha)^2 + 2*cos(2*pi*alpha)*cos(pi*beta)

or directly by the Henon-map parameters (beta, c).  Both charts are kept in
the Params record together with the fixed-point multipliers

    lambda1 = exp(2*pi*i*(-alpha + beta/2)),
    lambda2 = exp(2*pi*i*( alpha + beta/2)),

which satisfy lambda1*lambda2 = exp(2*pi*i*beta) and
lambda1 + lambda2 = 2*t*exp(i*pi*beta) where t = cos(2*pi*alpha) is one of
the fixed-point abscissae t^2 - 2*t*cos(pi*beta) + c = 0.
"""

import cmath
import math
from dataclasses import dataclass

from .errors import NoConvergence

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Params:
    """Immutable parameter bundle; see module docstring for the relations."""

    tau: complex
    mbeta: complex
    delta: float
    alpha: complex
    beta: complex
    c: complex
    lambda1: complex
    lambda2: complex
    t_plus: complex
    t_minus: complex


def params_from_resonant(tau, mbeta, delta):
    """Populate Params from the resonant chart (tau, mbeta, delta).

    delta >= 0 is required; delta = 0 is the exact resonance and is fine
    (alpha = 1/6, beta = 1/3, c = 1/4 for any tau, mbeta).

    The abscissa t_plus is chosen as cos(2*pi*alpha), the root tracked by
    the resonance construction; t_minus is the companion root
    2*cos(pi*beta) - cos(2*pi*alpha).
    """
    if delta < 0:
        raise ValueError("delta must be >= 0, got %r" % (delta,))
    tau = complex(tau)
    mbeta = complex(mbeta)
    delta = float(delta)

    beta = 1.0 / 3.0 + delta * mbeta
    alpha = 1.0 / 6.0 + delta * (tau - 0.5) * mbeta

    ca = cmath.cos(TWO_PI * alpha)      # cos(2 pi alpha), a fixed-point abscissa
    cb = cmath.cos(math.pi * beta)
    c = -ca * ca + 2.0 * ca * cb

    lambda1 = cmath.exp(2j * math.pi * (-alpha + beta / 2.0))
    lambda2 = cmath.exp(2j * math.pi * (alpha + beta / 2.0))

    return Params(
        tau=tau, mbeta=mbeta, delta=delta,
        alpha=alpha, beta=beta, c=c,
        lambda1=lambda1, lambda2=lambda2,
        t_plus=ca, t_minus=2.0 * cb - ca,
    )


def mu_delta(params):
    """The quadratic coefficient 1/(2 sin(2 pi alpha)) of the diagonal frame."""
    return 1.0 / (2.0 * cmath.sin(TWO_PI * params.alpha))


def alpha_from_beta_c(beta, c):
    """Solve cos(2*pi*alpha) = cos(pi*beta) +/- sqrt(cos(pi*beta)^2 - c).

    Returns (alpha_plus, alpha_minus), one per sign of the principal square
    root.  alpha is recovered with the principal arccos, so Re(alpha) lands
    in [0, 1/2]; within that strip the map round-trips exactly with the
    c(alpha, beta) relation.  At the discriminant zero c = cos(pi*beta)^2
    the two branches coincide (double root).
    """
    beta = complex(beta)
    c = complex(c)
    cb = cmath.cos(math.pi * beta)
    disc = cmath.sqrt(cb * cb - c)
    alpha_plus = cmath.acos(cb + disc) / TWO_PI
    alpha_minus = cmath.acos(cb - disc) / TWO_PI
    return alpha_plus, alpha_minus


def params_from_beta_c(beta, c, branch="auto"):
    """Build a full Params record from raw Henon parameters (beta, c).

    The resonant chart is reconstructed around beta = 1/3: delta = |beta -
    1/3|, mbeta the unit direction (1.0 when delta = 0), and tau from
    inverting alpha = 1/6 + delta*(tau - 1/2)*mbeta.  branch picks which
    alpha_from_beta_c root to use; "auto" takes the one closest to 1/6,
    which is the resonance-tracked branch for every preset we ship.
    """
    beta = complex(beta)
    c = complex(c)
    off = beta - 1.0 / 3.0
    delta = abs(off)
    mbeta = off / delta if delta > 0 else 1.0 + 0.0j

    ap, am = alpha_from_beta_c(beta, c)
    if branch == "plus":
        alpha = ap
    elif branch == "minus":
        alpha = am
    elif branch == "auto":
        alpha = ap if abs(ap - 1.0 / 6.0) <= abs(am - 1.0 / 6.0) else am
    else:
        raise ValueError("branch must be 'plus', 'minus' or 'auto'")

    if delta > 0:
        tau = 0.5 + (alpha - 1.0 / 6.0) / (delta * mbeta)
    else:
        tau = 1.0 + 0.0j

    # Re-derive everything from the resonant chart so the type invariants
    # hold exactly; the recomputed c differs from the input only by the
    # rounding of the chart change.
    out = params_from_resonant(tau, mbeta, delta)
    return out


def reversibility_tau(t, mbeta, delta, tol=1e-12, max_iter=50):
    """Find tau near 1 + i*t with Im c(tau) = 0 (real-reversible locus).

    Newton iteration on Re(tau) with Im(tau) frozen at t; the derivative is
    a central difference with step 1e-7*max(1, |Re tau|).  t = 0 returns
    exactly 1.0 without iterating (c is real on the horizontal branch by
    symmetry).  Validated for |t| up to about 1.5 with delta <= 0.05.

    Raises NoConvergence if |Im c| stays above tol for max_iter steps.
    """
    t = float(t)
    mbeta = float(mbeta)
    delta = float(delta)
    if t == 0.0:
        return complex(1.0, 0.0)

    def im_c(x):
        return params_from_resonant(complex(x, t), mbeta, delta).c.imag

    x = 1.0
    for _ in range(max_iter):
        r = im_c(x)
        if abs(r) < tol:
            return complex(x, t)
        h = 1e-7 * max(1.0, abs(x))
        d = (im_c(x + h) - im_c(x - h)) / (2.0 * h)
        if d == 0.0:
            break
        x -= r / d
    r = im_c(x)
    if abs(r) < tol:
        return complex(x, t)
    raise NoConvergence(
        "Im c residual %.3e after %d Newton steps" % (abs(r), max_iter),
        iterations=max_iter, final_l1=abs(r),
    )
