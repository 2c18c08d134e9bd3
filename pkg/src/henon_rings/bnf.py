"""Resonant normal form of the diagonalized quadratic map, through order 4.

The map diag(lambda1, lambda2)^{-1} o h^mod is a near-identity exact
symplectic map; its generating jet is normalized degree by degree.  At each
degree d the generator Y solves the cohomological equation

    Y(k, l) = G(k, l) / (e^{-2 pi i beta} lambda1^k lambda2^l - 1)

on the non-resonant lattice sites, and the time-1 flow Phi_Y conjugates
the map, M <- Phi_Y^{-1} o M o Phi_Y.  At the 1:3 resonance the divisor
vanishes exactly on l = 1 mod 3; those sites are masked and survive as the
normal-form coefficients, in particular b21 (degree 3, site (2,1)) and b04
(degree 4, site (0,4)).
"""

import cmath
import math

from .errors import SmallDivisor
from .jets import Jet2, generating_jet, jet_compose, lie_flow_map
from .params import mu_delta

# primitive cube root of unity, computed once
J_CUBE = cmath.exp(2j * math.pi / 3.0)

DIVISOR_FLOOR = 1e-8


def ushiki_resonance_mask(k, l):
    """True on the resonant lattice of the 1:3 structure: l = 1 (mod 3)."""
    return l % 3 == 1


def hmod_jet(params, max_degree=6):
    """h^mod as a jet map: (lambda1 z, lambda2 w) + i mu (lambda1 z + lambda2 w)^2 (1, -1)."""
    lam1, lam2 = params.lambda1, params.lambda2
    z, w = Jet2.z(max_degree), Jet2.w(max_degree)
    u = lam1 * z + lam2 * w
    q = (1j * mu_delta(params)) * (u * u)
    return (lam1 * z + q, lam2 * w - q)


def cohomological_solve(G, alpha, beta, resonant_mask=ushiki_resonance_mask):
    """Split G into a solvable part Y and a resonant residual.

    Returns (Y, residual) with Y(k,l) = G(k,l)/D(k,l) off the mask, where
    D(k,l) = e^{-2 pi i beta} lambda1^k lambda2^l - 1, and residual carrying
    the masked sites untouched.  Raises SmallDivisor when an unmasked site
    has |D| below 1e-8 (the parameters sit too close to another resonance).
    """
    lam1 = cmath.exp(2j * math.pi * (-alpha + beta / 2.0))
    lam2 = cmath.exp(2j * math.pi * (alpha + beta / 2.0))
    em = cmath.exp(-2j * math.pi * beta)
    D = G.max_degree
    Y = Jet2(D)
    residual = Jet2(D)
    for k in range(D + 1):
        for l in range(D + 1 - k):
            gv = G.coeffs[k, l]
            if gv == 0:
                continue
            if resonant_mask(k, l):
                residual.coeffs[k, l] = gv
                continue
            div = em * lam1 ** k * lam2 ** l - 1.0
            if abs(div) < DIVISOR_FLOOR:
                raise SmallDivisor(
                    "divisor %.3e at site (%d, %d) below %g"
                    % (abs(div), k, l, DIVISOR_FLOOR))
            Y.coeffs[k, l] = gv / div
    return Y, residual


def _lambda_inv_after(m, lam1, lam2):
    return (m[0] / lam1, m[1] / lam2)


def resonant_bnf(params, order=4):
    """Normalize h^mod through the given order (3 or 4).

    Returns (b21, b04, generator_jets): the two surviving resonant
    coefficients of the generating jet and the list of generators used
    (one per degree step; for order 3 the list has one entry and b04 is
    read off the unnormalized degree-4 part).

    At delta = 0 the exact values are b21 = i*mu and b04 = i*nu/4 with
    mu = 1/sqrt(3), nu = -(2/3)/sqrt(3); at small delta they move by O(delta).
    """
    if order not in (3, 4):
        raise ValueError("order must be 3 or 4")
    lam1, lam2 = params.lambda1, params.lambda2
    M = hmod_jet(params)
    gens = []
    for d in range(3, order + 1):
        F = generating_jet(_lambda_inv_after(M, lam1, lam2), d)
        G = F.degree_part(d)
        Y, _res = cohomological_solve(G, params.alpha, params.beta)
        gens.append(Y)
        phi = lie_flow_map(Y)
        phi_inv = lie_flow_map(-Y)
        M = jet_compose(phi_inv, jet_compose(M, phi))
    F = generating_jet(_lambda_inv_after(M, lam1, lam2), 4)
    return F[2, 1], F[0, 4], gens


def bnf_normal_form_jet(params, order=4):
    """Full generating jet of the normalized map (diagnostic companion).

    The non-resonant sites through `order` vanish to rounding; the resonant
    ones are the normal-form data.
    """
    if order not in (3, 4):
        raise ValueError("order must be 3 or 4")
    lam1, lam2 = params.lambda1, params.lambda2
    M = hmod_jet(params)
    for d in range(3, order + 1):
        F = generating_jet(_lambda_inv_after(M, lam1, lam2), d)
        Y, _res = cohomological_solve(F.degree_part(d), params.alpha, params.beta)
        phi = lie_flow_map(Y)
        phi_inv = lie_flow_map(-Y)
        M = jet_compose(phi_inv, jet_compose(M, phi))
    return generating_jet(_lambda_inv_after(M, lam1, lam2), order), M
