"""Exact scalars: Gaussian rationals and truncated power series in hbar.

Everything downstream is computed over Q(i)[[hbar]]/(hbar^{N+1}) with a fixed
truncation order N, so every identity test in the package is an exact equality
of rational numbers -- no tolerances anywhere.
"""

from fractions import Fraction

#: default truncation order for hbar-series (captures the order-hbar^2
#: associator of the nonassociative preset with one order of margin)
DEFAULT_ORDER = 3


class GaussianRational:
    """Element of Q(i), stored as a pair of reduced fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:        # common fast path
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % self.im
        sign = "+" if self.im > 0 else "-"
        return "%s%s%s*i" % (self.re, sign, abs(self.im))


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def gaussian(re, im=0):
    return GaussianRational(re, im)


class HbarPoly:
    """Truncated series c_0 + c_1*hbar + ... + c_N*hbar^N over Q(i).

    The truncation order N is part of the value; mixing orders is an error.
    Instances are immutable (the min-degree cache is filled lazily).
    """

    __slots__ = ("coeffs", "_mindeg")

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        self._mindeg = None

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, order=DEFAULT_ORDER):
        return cls((GR_ZERO,) * (order + 1))

    @classmethod
    def const(cls, c, order=DEFAULT_ORDER):
        if not isinstance(c, GaussianRational):
            c = GaussianRational(c)
        return cls((c,) + (GR_ZERO,) * order)

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls.const(GR_ONE, order)

    @classmethod
    def hbar(cls, order=DEFAULT_ORDER, power=1, c=GR_ONE):
        """c * hbar^power at the given truncation order."""
        if power < 0:
            raise ValueError("negative hbar power")
        if not isinstance(c, GaussianRational):
            c = GaussianRational(c)
        cs = [GR_ZERO] * (order + 1)
        if power <= order:
            cs[power] = c
        return cls(cs)

    # -- basic queries --------------------------------------------------

    @property
    def order(self):
        return len(self.coeffs) - 1

    def min_degree(self):
        """Smallest k with c_k != 0, or order+1 for the zero series."""
        d = self._mindeg
        if d is None:
            d = len(self.coeffs)
            for k, c in enumerate(self.coeffs):
                if c.re or c.im:
                    d = k
                    break
            self._mindeg = d
        return d

    def __bool__(self):
        return self.min_degree() < len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, HbarPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if len(self.coeffs) != len(other.coeffs):
            raise ValueError("mismatched truncation orders")

    def __add__(self, other):
        self._check(other)
        return HbarPoly(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return HbarPoly(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return HbarPoly(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, HbarPoly):
            return self.scale(other)
        self._check(other)
        n = len(self.coeffs)
        dx, dy = self.min_degree(), other.min_degree()
        if dx + dy >= n:
            return HbarPoly.zero(n - 1)
        out = [GR_ZERO] * n
        for i in range(dx, n - dy):
            a = self.coeffs[i]
            if not (a.re or a.im):
                continue
            for j in range(dy, n - i):
                b = other.coeffs[j]
                if b.re or b.im:
                    out[i + j] = out[i + j] + a * b
        return HbarPoly(out)

    def scale(self, c):
        """Multiply by a scalar (GaussianRational / int / Fraction)."""
        if not isinstance(c, GaussianRational):
            c = GaussianRational(c)
        if not c:
            return HbarPoly.zero(self.order)
        return HbarPoly(tuple(a * c for a in self.coeffs))

    def inv(self):
        """Multiplicative inverse at truncation order; needs c_0 != 0."""
        c0 = self.coeffs[0]
        if not c0:
            raise ValueError("series_inv: zero constant term")
        n = len(self.coeffs)
        inv0 = GR_ONE / c0
        out = [inv0] + [GR_ZERO] * (n - 1)
        # order-by-order: sum_{j<k} out_j * a_{k-j} + out_k * a_0 = 0
        for k in range(1, n):
            s = GR_ZERO
            for j in range(k):
                a = self.coeffs[k - j]
                if a and out[j]:
                    s = s + out[j] * a
            out[k] = -s * inv0
        return HbarPoly(out)

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                bits.append(str(c))
            elif k == 1:
                bits.append("(%s)*h" % c)
            else:
                bits.append("(%s)*h^%d" % (c, k))
        return " + ".join(bits) if bits else "0"


def series_mul(a, b):
    """Cauchy product of two series at a shared truncation order."""
    return a * b


def series_inv(a):
    """Inverse series; raises ValueError on zero constant term."""
    return a.inv()
