"""Harmonic-balance (Fourier-Newton) solver for the model periodic orbit.

The orbit ansatz puts z on harmonics 3k and w on harmonics 3k+1 of a base
frequency g:

    z(t) = sum_k z_{3k} e^{2 pi i (3k) g t},
    w(t) = sum_k w_{3k+1} e^{2 pi i (3k+1) g t},     k = -N..N.

Substituting into the X_tau flow equation and matching carriers gives one
algebraic row per retained harmonic ("unhat" convention):

    z-row k:  -3k g z_{3k} + (1 - tau) z_{3k} + (1/2)(z*z)_{3k} - (1/3)(w*w*w)_{3k} = 0
    w-row k:  -(3k+1) g w_{3k+1} + tau w_{3k+1} - (z*w)_{3k+1} = 0

with exact (truncation-free) convolutions.  The "hat" convention stores
zhat = z - tau; its z-row trades the (1 - tau) diagonal for a +tauhat
forcing on the center row (tauhat = tau - tau^2/2).  The frequency g is an
unknown; the center w coefficient is pinned to w1 instead (scale fixing),
and one checks afterwards that the residual of the pinned row vanished
along with the rest.

The Newton iteration follows the source numerics: forward-difference
Jacobian with step 1e-4 (an analytic Jacobian is available behind a flag),
square linear solve, at most 8 iterations to reach l1 < 1e-12.
"""

import cmath
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .errors import BranchFailure, NoConvergence, SingularJacobian
from .henon import PlanarPoint

CONV_HAT = "hat"
CONV_UNHAT = "unhat"

FD_STEP = 1e-4
DEFAULT_N = 12
DEFAULT_W1 = 1.4
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 8


@dataclass
class FourierOrbit:
    """Truncated Fourier data; arrays are indexed i = k + N for k in [-N, N]."""

    N: int
    g: complex
    w1: complex
    z_coeffs: np.ndarray
    w_coeffs: np.ndarray
    tau: complex
    convention: str = CONV_HAT

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.convention not in (CONV_HAT, CONV_UNHAT):
            raise ValueError("convention must be %r or %r" % (CONV_HAT, CONV_UNHAT))
        n = 2 * self.N + 1
        self.z_coeffs = np.asarray(self.z_coeffs, dtype=complex).copy()
        self.w_coeffs = np.asarray(self.w_coeffs, dtype=complex).copy()
        if self.z_coeffs.shape != (n,) or self.w_coeffs.shape != (n,):
            raise ValueError("coefficient arrays must have length 2N+1 = %d" % n)
        self.w_coeffs[self.N] = self.w1   # pinned, never a Newton unknown

    def tauhat(self):
        t = complex(self.tau)
        return t - t * t / 2.0


@dataclass
class ResidualVector:
    z_residuals: np.ndarray
    w_residuals: np.ndarray
    l1: float


def _rows(z, w, g, tau, N, hat):
    """Residual rows for coefficient arrays; see module docstring."""
    i = np.arange(2 * N + 1)
    k = i - N
    zz = np.convolve(z, z)
    www = np.convolve(np.convolve(w, w), w)
    zw = np.convolve(z, w)
    if hat:
        Sz = -3 * k * g * z + z + 0.5 * zz[i + N] - www[i + 2 * N - 1] / 3.0
        Sz[N] += tau - tau * tau / 2.0
        Sw = -(3 * k + 1) * g * w - zw[i + N]
    else:
        Sz = -3 * k * g * z + (1.0 - tau) * z + 0.5 * zz[i + N] - www[i + 2 * N - 1] / 3.0
        Sw = -(3 * k + 1) * g * w + tau * w - zw[i + N]
    return Sz, Sw


def residual(orbit):
    Sz, Sw = _rows(orbit.z_coeffs, orbit.w_coeffs, orbit.g, complex(orbit.tau),
                   orbit.N, orbit.convention == CONV_HAT)
    l1 = float(np.sum(np.abs(Sz)) + np.sum(np.abs(Sw)))
    return ResidualVector(Sz, Sw, l1)


def convert(orbit, to):
    """Switch hat <-> unhat bookkeeping (a single center-coefficient shift)."""
    if to not in (CONV_HAT, CONV_UNHAT):
        raise ValueError("to must be %r or %r" % (CONV_HAT, CONV_UNHAT))
    if to == orbit.convention:
        return replace(orbit)
    z = orbit.z_coeffs.copy()
    if to == CONV_UNHAT:
        z[orbit.N] += orbit.tau
    else:
        z[orbit.N] -= orbit.tau
    return replace(orbit, z_coeffs=z, convention=to)


def coarse_frequency(tau):
    """Root g = (-4 - sqrt(16 + 11(2 tau - tau^2)))/11 of the 2-harmonic balance."""
    disc = 16.0 + 11.0 * (2.0 * complex(tau) - complex(tau) ** 2)
    if disc.imag == 0.0 and disc.real < 0.0:
        raise BranchFailure("discriminant %r on the negative real axis" % (disc,))
    return (-4.0 - cmath.sqrt(disc)) / 11.0


def fine_frequency(tau, g_coarse):
    """Root of (1/3)(5g - 8) g (2g + 1) - g + g^2/2 + tauhat = 0 nearest coarse."""
    t = complex(tau)
    tauhat = t - t * t / 2.0
    roots = np.roots([10.0 / 3.0, -11.0 / 3.0 + 0.5, -8.0 / 3.0 - 1.0, tauhat])
    return complex(roots[np.argmin(np.abs(roots - g_coarse))])


def initial_guess(tau, w1, level, N=DEFAULT_N):
    """Few-harmonic starting orbit for the Newton solve, hat convention.

    coarse: zhat_0 = -g, w_-2 = 3g(2g+1)/w1^2, z_-3 = 9g^2(2g+1)/w1^3 with
    the quadratic-balance g; fine refines g through the cubic balance and
    adds z_3 = w1^3/9, w_4 = -w1^4/(27g).
    """
    if level not in ("coarse", "fine"):
        raise ValueError("level must be 'coarse' or 'fine'")
    tau = complex(tau)
    w1 = complex(w1)
    g = coarse_frequency(tau)
    if level == "fine":
        g = fine_frequency(tau, g)
    n = 2 * N + 1
    z = np.zeros(n, dtype=complex)
    w = np.zeros(n, dtype=complex)
    z[N] = -g
    z[N - 1] = 9.0 * g ** 2 * (2.0 * g + 1.0) / w1 ** 3
    w[N - 1] = 3.0 * g * (2.0 * g + 1.0) / w1 ** 2
    if level == "fine":
        z[N + 1] = w1 ** 3 / 9.0
        w[N + 1] = -w1 ** 4 / (27.0 * g)
    return FourierOrbit(N=N, g=g, w1=w1, z_coeffs=z, w_coeffs=w, tau=tau,
                        convention=CONV_HAT)


# --- Newton --------------------------------------------------------------
#
# Unknown vector layout: [z_{-3N}..z_{3N}, w (center skipped), g]; the
# rows are holomorphic in the unknowns (no conjugates appear), so the
# complex-linear Jacobian solve is exactly the real-split Newton step.

def _pack(orbit):
    N = orbit.N
    w_free = np.delete(orbit.w_coeffs, N)
    return np.concatenate([orbit.z_coeffs, w_free, [orbit.g]])


def _unpack(x, N, w1):
    n = 2 * N + 1
    z = x[:n]
    w_free = x[n:n + 2 * N]
    w = np.concatenate([w_free[:N], [w1], w_free[N:]])
    g = x[-1]
    return z, w, g


def _residual_of(x, N, w1, tau, hat):
    z, w, g = _unpack(x, N, w1)
    Sz, Sw = _rows(z, w, g, tau, N, hat)
    return np.concatenate([Sz, Sw])


def _analytic_jacobian(x, N, w1, tau, hat):
    z, w, g = _unpack(x, N, w1)
    n = 2 * N + 1
    i = np.arange(n)
    k = i - N
    ww = np.convolve(w, w)

    def at(arr, idx):
        return arr[idx] if 0 <= idx < len(arr) else 0.0

    J = np.zeros((2 * n, 2 * n), dtype=complex)
    dz_diag = -3 * k * g + (1.0 if hat else 1.0 - tau)
    dw_diag = -(3 * k + 1) * g + (0.0 if hat else tau)
    for r in range(n):           # z-rows
        for m in range(n):
            J[r, m] = (dz_diag[r] if r == m else 0.0) + at(z, r - m + N)
        col = 0
        for m in range(n):
            if m == N:
                continue
            J[r, n + col] = -at(ww, r + 2 * N - 1 - m)
            col += 1
        J[r, -1] = -3 * k[r] * z[r]
    for r in range(n):           # w-rows
        for m in range(n):
            J[n + r, m] = -at(w, r + N - m)
        col = 0
        for m in range(n):
            if m == N:
                continue
            J[n + r, n + col] = (dw_diag[r] if r == m else 0.0) - at(z, r + N - m)
            col += 1
        J[n + r, -1] = -(3 * k[r] + 1) * w[r]
    return J


def newton_solve(guess, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER,
                 jacobian="fd", return_history=False):
    """Newton-iterate the guess to a solved FourierOrbit.

    jacobian: "fd" (forward differences, step 1e-4) or "analytic".
    Raises NoConvergence(iterations, final_l1) if l1 stays >= tol after
    max_iter steps, SingularJacobian if a linear solve breaks down.
    """
    if tol < 1e-14:
        raise ValueError("tol must be >= 1e-14")
    if jacobian not in ("fd", "analytic"):
        raise ValueError("jacobian must be 'fd' or 'analytic'")
    N, w1, tau = guess.N, guess.w1, complex(guess.tau)
    hat = guess.convention == CONV_HAT
    x = _pack(guess)
    nun = x.size
    F0 = _residual_of(x, N, w1, tau, hat)
    l1 = float(np.sum(np.abs(F0)))
    history = [l1]
    for _ in range(max_iter):
        if l1 < tol:
            break
        if jacobian == "fd":
            J = np.empty((nun, nun), dtype=complex)
            for m in range(nun):
                xp = x.copy()
                xp[m] += FD_STEP
                J[:, m] = (_residual_of(xp, N, w1, tau, hat) - F0) / FD_STEP
        else:
            J = _analytic_jacobian(x, N, w1, tau, hat)
        try:
            dx = np.linalg.solve(J, -F0)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(str(exc)) from None
        if not np.all(np.isfinite(dx)):
            raise SingularJacobian("non-finite Newton step")
        x = x + dx
        F0 = _residual_of(x, N, w1, tau, hat)
        l1 = float(np.sum(np.abs(F0)))
        history.append(l1)
    if l1 >= tol:
        raise NoConvergence("residual l1 %.3e after %d iterations" % (l1, max_iter),
                            iterations=max_iter, final_l1=l1)
    z, w, g = _unpack(x, N, w1)
    out = FourierOrbit(N=N, g=complex(g), w1=w1, z_coeffs=z, w_coeffs=w,
                       tau=tau, convention=guess.convention)
    if return_history:
        return out, history
    return out


def tail_residual(orbit, N_prime):
    """l1 residual after zero-padding the coefficients into a larger window.

    The rows beyond the solved window measure the truncation error of the
    orbit as a solution of the full system.  N_prime = N reproduces the
    converged residual.
    """
    N = orbit.N
    if N_prime < N:
        raise ValueError("N_prime must be >= N")
    pad = N_prime - N
    z = np.pad(orbit.z_coeffs, pad)
    w = np.pad(orbit.w_coeffs, pad)
    Sz, Sw = _rows(z, w, orbit.g, complex(orbit.tau), N_prime,
                   orbit.convention == CONV_HAT)
    return float(np.sum(np.abs(Sz)) + np.sum(np.abs(Sw)))


def evaluate(orbit, t):
    """Sum the truncated series at complex time t.

    A hat orbit evaluates to (zhat(t), w(t)).  The period identity
    evaluate(t + 1/g) = evaluate(t) holds exactly (same exponentials), and
    evaluate(t + 1/(3g)) = (z(t), j w(t)) with j = e^{2 pi i/3}.
    """
    k = np.arange(-orbit.N, orbit.N + 1)
    g = orbit.g
    zv = np.sum(orbit.z_coeffs * np.exp(2j * np.pi * (3 * k) * g * t))
    wv = np.sum(orbit.w_coeffs * np.exp(2j * np.pi * (3 * k + 1) * g * t))
    return PlanarPoint(complex(zv), complex(wv))


def translate(orbit, s):
    """Time-translated representative of the same orbit (real s).

    Coefficients pick up the carrier phases; the pinned value w1 moves with
    the center coefficient so the record stays consistent.
    """
    k = np.arange(-orbit.N, orbit.N + 1)
    g = orbit.g
    z = orbit.z_coeffs * np.exp(-2j * np.pi * (3 * k) * g * s)
    w = orbit.w_coeffs * np.exp(-2j * np.pi * (3 * k + 1) * g * s)
    return FourierOrbit(N=orbit.N, g=g, w1=complex(w[orbit.N]), z_coeffs=z,
                        w_coeffs=w, tau=orbit.tau, convention=orbit.convention)


def frequency_derivative(tau_hat, h, N=DEFAULT_N, w1=DEFAULT_W1):
    """Central difference of the frequency map ghat(tauhat).

    Each endpoint is a full fine-guess solve; tauhat is mapped to the
    unhat parameter through tau = 1 - sqrt(1 - 2 tauhat) (exact inverse of
    tauhat = tau - tau^2/2 on the branch through tau = 1).
    """
    def g_of(th):
        tau = 1.0 - cmath.sqrt(1.0 - 2.0 * th)
        orbit = newton_solve(initial_guess(tau, w1, "fine", N=N))
        return orbit.g

    gp = g_of(tau_hat + h)
    gm = g_of(tau_hat - h)
    return float(((gp - gm) / (2.0 * h)).real)


def decay_fit(orbit):
    """Least-squares fit |coeff| ~ C rho^|k|; returns (C, rho).

    Uses both coefficient families, skipping exact zeros; rho < 1 is the
    exponential-decay certificate asserted after every solve.
    """
    ks = []
    logs = []
    N = orbit.N
    for arr in (orbit.z_coeffs, orbit.w_coeffs):
        for i, v in enumerate(arr):
            a = abs(v)
            if a > 0.0:
                ks.append(abs(i - N))
                logs.append(np.log(a))
    ks = np.asarray(ks, dtype=float)
    logs = np.asarray(logs)
    A = np.vstack([np.ones_like(ks), ks]).T
    sol, *_ = np.linalg.lstsq(A, logs, rcond=None)
    return float(np.exp(sol[0])), float(np.exp(sol[1]))
