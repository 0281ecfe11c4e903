from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qhopf.scalars import (
    GaussianRational,
    HbarPoly,
    gaussian,
    series_inv,
    series_mul,
)


def H(*coeffs):
    return HbarPoly(tuple(gaussian(c) if not isinstance(c, GaussianRational) else c
                          for c in coeffs))


def test_mul_truncates():
    # (1 + hbar)(1 - hbar) = 1 - hbar^2 at order 2
    assert series_mul(H(1, 1, 0), H(1, -1, 0)) == H(1, 0, -1)


def test_imaginary_square():
    ih = HbarPoly.hbar(2, 1, gaussian(0, 1))
    assert series_mul(ih, ih) == H(0, 0, -1)


def test_mul_drops_overflow():
    # (1 + hbar + hbar^2)(1 + hbar) = 1 + 2 hbar + 2 hbar^2 at order 2
    assert series_mul(H(1, 1, 1), H(1, 1, 0)) == H(1, 2, 2)


def test_inv_constant():
    assert series_inv(H(2, 0, 0)) == H(Fraction(1, 2), 0, 0)


def test_inv_geometric():
    assert series_inv(H(1, 1, 0)) == H(1, -1, 1)


def test_inv_zero_constant_term():
    with pytest.raises(ValueError):
        series_inv(H(0, 1, 0))


def test_order_mismatch():
    with pytest.raises(ValueError):
        series_mul(H(1, 1), H(1, 1, 1))
    with pytest.raises(ValueError):
        H(1, 1) + H(1, 1, 1)


def test_gaussian_division():
    a = gaussian(1, 1)
    b = gaussian(0, 1)
    assert a / b == gaussian(1, -1)
    with pytest.raises(ZeroDivisionError):
        a / gaussian(0)


rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)
scalars = st.builds(gaussian, rationals, rationals)
series = st.builds(lambda cs: HbarPoly(tuple(cs)),
                   st.lists(scalars, min_size=4, max_size=4))


# (a + b) c = a c + b c  and  a b = b a
@given(series, series, series)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


# x * inv(x) = 1 whenever the constant term is invertible
@given(series)
def test_inv_cancels(x):
    if not x.coeffs[0]:
        return
    assert x * series_inv(x) == HbarPoly.one(x.order)


@given(series)
def test_min_degree(x):
    d = x.min_degree()
    for k, c in enumerate(x.coeffs):
        if k < d:
            assert not c
    if d <= x.order:
        assert x.coeffs[d]
