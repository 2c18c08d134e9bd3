"""Floquet analysis of the flow linearized along a spectral orbit.

The linearization of the model flow along the periodic solution carried by
a FourierOrbit is a linear ODE with periodic coefficients, so its resolvent
factors as R(t,s) = P(t) exp(2 pi i (t-s) M) P(s)^{-1} with P sharing the
orbit's harmonic lattice.  Truncating to the solved window turns the
exponent problem into a dense 2(2N+1) x 2(2N+1) eigenproblem whose matrix
is the Jacobian of the spectral residual in the coefficient directions.
The physically selected pair of eigenvalues sits near 0 (time translation
along the orbit) and near 1 - g.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from .errors import DominanceFailure, EigDivergence, SelectionFailure
from .spectral import CONV_HAT, CONV_UNHAT, convert, evaluate, tail_residual
from .vfield import KIND_XHAT, ModelField, field_components

SELECTION_WINDOW = 0.01


def _l1(a):
    return float(np.sum(np.abs(a)))


@dataclass
class FloquetData:
    """Selected Floquet pair and the gauge data built from it.

    u1, v1 and u2, v2 are the eigenvector coefficient tables on the z-type
    (harmonics 3k) and w-type (harmonics 3k+1) lattices.  eig_residuals
    holds the relative eigenpair defects ||K b - lambda b||_1 / ||b||_1 at
    the solve window, which sit at eigensolver precision.
    """

    N: int
    g: complex
    lambda1: complex
    lambda2: complex
    u1: np.ndarray
    v1: np.ndarray
    u2: np.ndarray
    v2: np.ndarray
    P0: np.ndarray
    P0_inv: np.ndarray
    det_P0: complex
    eig_residuals: Tuple[float, float]


def _apply(z, w, g, tau, u, v, N):
    """One application of the linearized operator to coefficient blocks.

    Rows are the derivative of the unhat residual rows in the (u, v)
    directions; the same code serves the solve window and the extended
    window used for the resolvent defect.
    """
    i = np.arange(2 * N + 1)
    k = i - N
    ww = np.convolve(w, w)
    Su = ((-3 * k * g + (1.0 - tau)) * u + np.convolve(z, u)[i + N]
          - np.convolve(ww, v)[i + 2 * N - 1])
    Sv = ((-(3 * k + 1) * g + tau) * v - np.convolve(z, v)[i + N]
          - np.convolve(u, w)[i + N])
    return Su, Sv


def build_linearization_operator(orbit):
    """Dense matrix of the linearization on the truncated lattice.

    Column m is the operator applied to the m-th unit coefficient vector,
    so every entry is an exact convolution of orbit coefficients.  The
    orbit is converted to the unhat bookkeeping internally; the operator
    itself does not depend on the convention.
    """
    orb = convert(orbit, CONV_UNHAT)
    N = orb.N
    n = 2 * N + 1
    z, w, g, tau = orb.z_coeffs, orb.w_coeffs, orb.g, complex(orb.tau)
    K = np.empty((2 * n, 2 * n), dtype=complex)
    e = np.zeros(2 * n, dtype=complex)
    for m in range(2 * n):
        e[m] = 1.0
        Su, Sv = _apply(z, w, g, tau, e[:n], e[n:], N)
        K[:n, m] = Su
        K[n:, m] = Sv
        e[m] = 0.0
    return K


def _select(values, vectors, target):
    hits = np.where(np.abs(values - target) < SELECTION_WINDOW)[0]
    if hits.size == 0:
        raise SelectionFailure("no eigenvalue within %g of %s"
                               % (SELECTION_WINDOW, target))
    i = hits[np.argmin(np.abs(values[hits] - target))]
    return complex(values[i]), vectors[:, i].copy()


def _gauge(b):
    # largest-magnitude coefficient made real positive; norm unchanged
    i = int(np.argmax(np.abs(b)))
    return b * (abs(b[i]) / b[i])


def floquet_eigensolve(orbit):
    """Solve the truncated eigenproblem and select the Floquet pair.

    Selection windows of radius 0.01 around 0 and 1 - g, nearest hit in
    each (multiple hits inside a window mean the orbit is degenerate at
    this truncation; the nearest is still well defined so we take it).
    Raises SelectionFailure on an empty window, EigDivergence if the
    dense eigensolver itself fails.
    """
    if orbit.N < 7:
        raise ValueError("Floquet selection needs N >= 7")
    K = build_linearization_operator(orbit)
    try:
        a, B = scipy.linalg.eig(K)
    except np.linalg.LinAlgError as exc:
        raise EigDivergence(str(exc)) from None
    g = complex(orbit.g)
    lam1, b1 = _select(a, B, 0.0)
    lam2, b2 = _select(a, B, 1.0 - g)
    b1 = _gauge(b1)
    b2 = _gauge(b2)
    n = 2 * orbit.N + 1
    u1, v1 = b1[:n], b1[n:]
    u2, v2 = b2[:n], b2[n:]
    P0 = np.array([[u1.sum(), u2.sum()],
                   [v1.sum(), v2.sum()]], dtype=complex)
    det_P0 = complex(P0[0, 0] * P0[1, 1] - P0[0, 1] * P0[1, 0])
    P0_inv = np.array([[P0[1, 1], -P0[0, 1]],
                       [-P0[1, 0], P0[0, 0]]], dtype=complex) / det_P0
    r1 = _l1(K @ b1 - lam1 * b1) / _l1(b1)
    r2 = _l1(K @ b2 - lam2 * b2) / _l1(b2)
    return FloquetData(N=orbit.N, g=g, lambda1=lam1, lambda2=lam2,
                       u1=u1, v1=v1, u2=u2, v2=v2,
                       P0=P0, P0_inv=P0_inv, det_P0=det_P0,
                       eig_residuals=(r1, r2))


def resolvent_residual(data, orbit, N_prime):
    """Defect of the eigenpairs embedded in a larger harmonic window.

    Zero-pads orbit and eigenvector tables to N_prime, applies the
    extended operator and returns the pair of l1 norms of
    (K' - lambda_j) ext(b_j).  At N_prime = N this reproduces the
    eigensolver defect; the growth with N_prime measures how much of each
    true Floquet eigenfunction the solved window missed.
    """
    if N_prime < data.N:
        raise ValueError("N_prime must be >= N")
    orb = convert(orbit, CONV_UNHAT)
    pad = N_prime - data.N
    z = np.pad(orb.z_coeffs, pad)
    w = np.pad(orb.w_coeffs, pad)
    g, tau = orb.g, complex(orb.tau)
    out = []
    for lam, u, v in ((data.lambda1, data.u1, data.v1),
                      (data.lambda2, data.u2, data.v2)):
        ue = np.pad(u, pad)
        ve = np.pad(v, pad)
        Su, Sv = _apply(z, w, g, tau, ue, ve, N_prime)
        out.append(_l1(Su - lam * ue) + _l1(Sv - lam * ve))
    return out[0], out[1]


def det_fourier_coeffs(data):
    """Fourier table of det P(t) on the w-type lattice (length 4N+1).

    det P(t) = u1(t)v2(t) - v1(t)u2(t); both products live on harmonics
    3k+1, so the center of the table (index 2N) is the coefficient of the
    fundamental e^{2 pi i g t}.
    """
    return np.convolve(data.u1, data.v2) - np.convolve(data.v1, data.u2)


def derived_quantities(data, orbit):
    """The quantities downstream arguments consume, as a named 4-tuple.

    Px0 applies P(0)^{-1} to the plain field components at the orbit's
    t = 0 point (unit factor divided out, which is the scale the source
    numerics quote).  mu_tilde is (leading value, band): the leading term
    (1/|g|) / det P(0) * v2_center of the translation coefficient, with
    the 1e-2 band standing in for the correction terms that are bounded
    but not computed.  det_floor is the dominant-diagonal margin of
    det P(t); opnorm_bound the coefficient-l1 bound on |P(t)|.
    """
    horb = convert(orbit, CONV_HAT)
    p0 = evaluate(horb, 0.0)
    f = ModelField(KIND_XHAT, horb.tauhat())
    X0 = np.array(field_components(f, p0), dtype=complex)
    Px0 = data.P0_inv @ X0
    T = 1.0 / abs(data.g)
    mu_tilde = (complex(T / data.det_P0 * data.v2[data.N]), 1e-2)
    d = det_fourier_coeffs(data)
    center = 2 * data.N
    det_floor = float(np.abs(d[center]) - (np.sum(np.abs(d)) - np.abs(d[center])))
    if det_floor <= 0.0:
        raise DominanceFailure("det P(t) center coefficient does not dominate "
                               "(margin %.3e); P(t) may be singular somewhere"
                               % det_floor)
    opnorm_bound = math.sqrt(_l1(data.u1) ** 2 + _l1(data.u2) ** 2
                             + _l1(data.v1) ** 2 + _l1(data.v2) ** 2)
    return Px0, mu_tilde, det_floor, opnorm_bound


def periodic_frame(data, t):
    """P(t): the 2x2 gauge matrix summed from the coefficient tables."""
    k = np.arange(-data.N, data.N + 1)
    eu = np.exp(2j * np.pi * (3 * k) * data.g * t)
    ev = np.exp(2j * np.pi * (3 * k + 1) * data.g * t)
    return np.array([[np.sum(data.u1 * eu), np.sum(data.u2 * eu)],
                     [np.sum(data.v1 * ev), np.sum(data.v2 * ev)]],
                    dtype=complex)


def resolvent(data, t):
    """Approximate resolvent R(t,0) = P(t) diag(e^{2 pi i lambda_j t}) P(0)^{-1}.

    Liouville's identity makes det R(t,0) e^{-2 pi i t} constant for the
    exact resolvent; the reconstruction drifts by no more than the
    resolvent defect, which module tests assert.
    """
    P = periodic_frame(data, t)
    E = np.diag(np.exp(2j * np.pi * np.array([data.lambda1, data.lambda2]) * t))
    return P @ E @ data.P0_inv


_P0_GOLDEN = np.array([[1.0624711709108121, 1.2460400371648754],
                       [0.07675705954779727, 0.37930020754260807]])
_XHAT_PIN = (-3.728971421315655, -0.26938912797026227)   # N = 7 window


def _row(name, value, criterion, ok):
    return "  %-18s %-26s %-34s %s" % (name, value, criterion,
                                       "PASS" if ok else "FAIL")


def floquet_report(orbit, N_prime=24):
    """Assemble the pass/fail table for an orbit; returns (text, all_ok).

    Always checks the parameter-independent structure (eigenpair defects,
    exponent locations, diagonal dominance).  When the orbit is the
    canonical tau = 1, w1 = 1.4 solve the table also compares against the
    recorded values for that run; the t = 0 field pin has its own row at
    N = 7 because that is the window the recorded value comes from.
    """
    data = floquet_eigensolve(orbit)
    ee1, ee2 = resolvent_residual(data, orbit, N_prime)
    Px0, mu_tilde, det_floor, opnorm_bound = derived_quantities(data, orbit)
    tail = tail_residual(orbit, N_prime)

    rows = []
    ok_all = True

    def add(name, value, criterion, ok):
        nonlocal ok_all
        ok_all = ok_all and bool(ok)
        rows.append(_row(name, value, criterion, ok))

    r1, r2 = data.eig_residuals
    add("eig defect 1", "%.3e" % r1, "< 1e-10", r1 < 1e-10)
    add("eig defect 2", "%.3e" % r2, "< 1e-10", r2 < 1e-10)
    add("lambda1", "%.3e" % abs(data.lambda1), "|lambda1| < 1e-3",
        abs(data.lambda1) < 1e-3)
    add("lambda2", "%.15g" % data.lambda2.real, "|lambda2-(1-g)| < 1e-3",
        abs(data.lambda2 - (1.0 - data.g)) < 1e-3)
    add("det_floor", "%.6f" % det_floor, "> 0", det_floor > 0.0)
    add("opnorm_bound", "%.6f" % opnorm_bound, "<= 2.7", opnorm_bound <= 2.7)

    canonical = (abs(complex(orbit.tau) - 1.0) < 1e-12
                 and abs(complex(orbit.w1) - 1.4) < 1e-12)
    if canonical and orbit.N >= 12:
        g = complex(data.g)
        add("g", "%.16f" % g.real, "-0.8345538969681955 @ 1e-9",
            abs(g - (-0.8345538969681955)) < 1e-9)
        add("lambda2 golden", "%.16f" % data.lambda2.real,
            "1.8345538969682487 @ 1e-8",
            abs(data.lambda2 - 1.8345538969682487) < 1e-8)
        add("lambda1 golden", "%.3e" % abs(data.lambda1), "< 1e-6",
            abs(data.lambda1) < 1e-6)
        dev = float(np.max(np.abs(data.P0 - _P0_GOLDEN)))
        add("P(0) entries", "max dev %.2e" % dev, "@ 1e-6", dev < 1e-6)
        add("det P(0)", "%.9f" % data.det_P0.real, "0.307353166 @ 1e-6",
            abs(data.det_P0 - 0.307353166302905) < 1e-6)
        v21 = complex(data.v2[data.N])
        add("v2 center", "%.9f" % v21.real, "-0.237538786 @ 1e-6",
            abs(v21 - (-0.237538786)) < 1e-6)
        add("ee1 (N'=%d)" % N_prime, "%.3e" % ee1, "< 1e-6", ee1 < 1e-6)
        add("ee2 (N'=%d)" % N_prime, "%.3e" % ee2, "< 1e-6", ee2 < 1e-6)
        add("tail (N'=%d)" % N_prime, "%.3e" % tail, "< 1e-7", tail < 1e-7)
        add("Px0[0]", "%.8f" % Px0[0].real, "-3.5097 @ 1e-3",
            abs(Px0[0] + 3.5097) < 1e-3)
        add("Px0[1]", "%.3e" % abs(Px0[1]), "< 1e-5", abs(Px0[1]) < 1e-5)
        add("det_floor golden", "%.6f" % det_floor, "> 0.30", det_floor > 0.30)
    if canonical and orbit.N == 7:
        horb = convert(orbit, CONV_HAT)
        p0 = evaluate(horb, 0.0)
        X0 = field_components(ModelField(KIND_XHAT, horb.tauhat()), p0)
        dev = max(abs(X0[0] - _XHAT_PIN[0]), abs(X0[1] - _XHAT_PIN[1]))
        add("Xhat(p(0))", "(%.9f, %.9f)" % (X0[0].real, X0[1].real),
            "N=7 pin @ 1e-6", dev < 1e-6)

    head = ("floquet report  N=%d  tau=%s  w1=%s  mu_tilde=(%.6f, band %.0e)"
            % (orbit.N, complex(orbit.tau), complex(orbit.w1),
               mu_tilde[0].real, mu_tilde[1]))
    return "\n".join([head] + rows) + "\n", ok_all
