"""Truncated bivariate power series (jets) in (z, w) over complex coefficients.

Everything the normal-form step needs: ring operations, composition,
partial derivatives, Poisson bracket, time-1 Lie flows of symplectic
generators, and the generating-function correspondence for exact
symplectic near-identity maps

    iota_F(z, w) = (z~, w~)  <=>  z~ = z + dF/dw~(z, w~),
                                  w  = w~ + dF/dz (z, w~).

Coefficients live in a dense (D+1) x (D+1) array, coeffs[k, l] holding the
z^k w^l coefficient; the degree cap D is at most 6, so the quartic loops
below are all tiny.
"""

import numpy as np

from .errors import DegreeMismatch

MAX_DEGREE = 6


class Jet2:
    """Polynomial jet of two variables, truncated at total degree max_degree."""

    __slots__ = ("max_degree", "coeffs")

    def __init__(self, max_degree, coeffs=None):
        if not 0 <= max_degree <= MAX_DEGREE:
            raise ValueError("max_degree must be in [0, %d]" % MAX_DEGREE)
        self.max_degree = int(max_degree)
        n = self.max_degree + 1
        if coeffs is None:
            self.coeffs = np.zeros((n, n), dtype=complex)
        else:
            c = np.asarray(coeffs, dtype=complex)
            if c.shape != (n, n):
                raise ValueError("coeffs shape %r does not match degree %d"
                                 % (c.shape, max_degree))
            self.coeffs = c.copy()
            self._truncate()

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, max_degree=MAX_DEGREE):
        return cls(max_degree)

    @classmethod
    def constant(cls, value, max_degree=MAX_DEGREE):
        out = cls(max_degree)
        out.coeffs[0, 0] = value
        return out

    @classmethod
    def z(cls, max_degree=MAX_DEGREE):
        out = cls(max_degree)
        out.coeffs[1, 0] = 1.0
        return out

    @classmethod
    def w(cls, max_degree=MAX_DEGREE):
        out = cls(max_degree)
        out.coeffs[0, 1] = 1.0
        return out

    @classmethod
    def from_terms(cls, terms, max_degree=MAX_DEGREE):
        """terms: iterable of (k, l, value)."""
        out = cls(max_degree)
        for k, l, v in terms:
            if k + l > max_degree:
                raise ValueError("term (%d, %d) exceeds degree %d" % (k, l, max_degree))
            out.coeffs[k, l] = v
        return out

    # -- bookkeeping -------------------------------------------------------

    def _truncate(self):
        n = self.max_degree + 1
        for k in range(n):
            for l in range(n):
                if k + l > self.max_degree:
                    self.coeffs[k, l] = 0.0

    def copy(self):
        return Jet2(self.max_degree, self.coeffs)

    def _check(self, other):
        if self.max_degree != other.max_degree:
            raise DegreeMismatch("jet degrees %d and %d differ"
                                 % (self.max_degree, other.max_degree))

    def __getitem__(self, kl):
        k, l = kl
        return complex(self.coeffs[k, l])

    def terms(self):
        """Non-zero terms as (k, l, value) tuples, lexicographic order."""
        out = []
        for k in range(self.max_degree + 1):
            for l in range(self.max_degree + 1 - k):
                v = self.coeffs[k, l]
                if v != 0:
                    out.append((k, l, complex(v)))
        return out

    def degree_part(self, d):
        """The homogeneous degree-d slice as a new jet."""
        out = Jet2(self.max_degree)
        for k in range(min(d, self.max_degree) + 1):
            l = d - k
            if l <= self.max_degree:
                out.coeffs[k, l] = self.coeffs[k, l]
        return out

    def max_abs(self):
        return float(np.max(np.abs(self.coeffs)))

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, Jet2):
            self._check(other)
            return Jet2(self.max_degree, self.coeffs + other.coeffs)
        out = self.copy()
        out.coeffs[0, 0] += other
        return out

    __radd__ = __add__

    def __neg__(self):
        return Jet2(self.max_degree, -self.coeffs)

    def __sub__(self, other):
        if isinstance(other, Jet2):
            self._check(other)
            return Jet2(self.max_degree, self.coeffs - other.coeffs)
        out = self.copy()
        out.coeffs[0, 0] -= other
        return out

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return Jet2(self.max_degree, self.coeffs * other)
        self._check(other)
        D = self.max_degree
        out = np.zeros((D + 1, D + 1), dtype=complex)
        a, b = self.coeffs, other.coeffs
        for k in range(D + 1):
            for l in range(D + 1 - k):
                if a[k, l] == 0:
                    continue
                for p in range(D + 1 - k - l):
                    for q in range(D + 1 - k - l - p):
                        out[k + p, l + q] += a[k, l] * b[p, q]
        return Jet2(D, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar):
        return Jet2(self.max_degree, self.coeffs / scalar)

    # -- calculus ----------------------------------------------------------

    def dz(self):
        out = Jet2(self.max_degree)
        for k in range(1, self.max_degree + 1):
            out.coeffs[k - 1, :] += k * self.coeffs[k, :]
        return out

    def dw(self):
        out = Jet2(self.max_degree)
        for l in range(1, self.max_degree + 1):
            out.coeffs[:, l - 1] += l * self.coeffs[:, l]
        return out

    def compose(self, p1, p2):
        """self(p1(z,w), p2(z,w)), truncated at the common degree."""
        self._check(p1)
        self._check(p2)
        D = self.max_degree
        one = Jet2.constant(1.0, D)
        pow1 = [one]
        pow2 = [one]
        for _ in range(D):
            pow1.append(pow1[-1] * p1)
            pow2.append(pow2[-1] * p2)
        out = Jet2(D)
        for k in range(D + 1):
            for l in range(D + 1 - k):
                v = self.coeffs[k, l]
                if v != 0:
                    out = out + v * (pow1[k] * pow2[l])
        return out

    def evaluate(self, zv, wv):
        """Plain polynomial evaluation at a point."""
        total = 0.0 + 0.0j
        for k in range(self.max_degree + 1):
            for l in range(self.max_degree + 1 - k):
                v = self.coeffs[k, l]
                if v != 0:
                    total += v * zv ** k * wv ** l
        return total


def identity_pair(max_degree=MAX_DEGREE):
    return (Jet2.z(max_degree), Jet2.w(max_degree))


def jet_compose(outer, inner):
    """Composition of jet maps: (outer o inner)(z, w), both pairs of Jet2."""
    o1, o2 = outer
    i1, i2 = inner
    return (o1.compose(i1, i2), o2.compose(i1, i2))


def poisson(a, b):
    """{a, b} = da/dw * db/dz - da/dz * db/dw."""
    return a.dw() * b.dz() - a.dz() * b.dw()


def lie_flow_map(Y):
    """Time-1 flow of the symplectic field J grad Y as a jet map.

    The Lie series g o Phi_Y = g + {Y, g} + {Y, {Y, g}}/2! + ... applied to
    the coordinate functions; for Y = O^3 each bracket raises the degree,
    so the series terminates at the degree cap.
    """
    D = Y.max_degree
    out = []
    for g0 in identity_pair(D):
        term = g0
        total = g0
        fact = 1.0
        for m in range(1, D + 1):
            term = poisson(Y, term)
            fact *= m
            if term.max_abs() == 0.0:
                break
            total = total + term / fact
        out.append(total)
    return (out[0], out[1])


def canonical_map(F):
    """Jet map of iota_F from the implicit system in the module docstring.

    Solved by fixed-point substitution in w~ (contracting because F = O^2);
    the degree cap makes the iteration finite.
    """
    D = F.max_degree
    z, w = identity_pair(D)
    dFz, dFw = F.dz(), F.dw()
    p2 = w
    for _ in range(D):
        p2 = w - dFz.compose(z, p2)
    p1 = z + dFw.compose(z, p2)
    return (p1, p2)


def generating_jet(pair, dmax):
    """Inverse of canonical_map: recover F (= O^3) from a near-identity pair.

    Works degree by degree on the defining relations
        n1 = z + dF/dw~(z, n2)      and      w = n2 + dF/dz(z, n2);
    for mixed monomials both relations determine the same coefficient, and
    a disagreement beyond 1e-10 means the map is not exact symplectic.
    """
    n1, n2 = pair
    D = n1.max_degree
    z, w = identity_pair(D)
    F = Jet2(D)
    for d in range(3, dmax + 1):
        R1 = n1 - z - F.dw().compose(z, n2)
        R2 = w - n2 - F.dz().compose(z, n2)
        R1d = R1.degree_part(d - 1)
        R2d = R2.degree_part(d - 1)
        Fd = Jet2(D)
        for k in range(d + 1):
            l = d - k
            if l > D or k > D:
                continue
            if l >= 1:
                Fd.coeffs[k, l] = R1d.coeffs[k, l - 1] / l
            else:
                Fd.coeffs[k, 0] = R2d.coeffs[k - 1, 0] / k
        for k in range(1, d):
            l = d - k
            if 1 <= l <= D and k <= D:
                alt = R2d.coeffs[k - 1, l] / k
                if abs(Fd.coeffs[k, l] - alt) > 1e-10:
                    raise ValueError(
                        "map is not exact symplectic at degree %d: "
                        "coefficient (%d, %d) mismatch %r vs %r"
                        % (d, k, l, Fd.coeffs[k, l], alt))
        F = F + Fd
    return F


def jacobian_det_jet(pair):
    """Jacobian determinant of a jet map, as a jet (1 + O for symplectic)."""
    p1, p2 = pair
    return p1.dz() * p2.dw() - p1.dw() * p2.dz()
