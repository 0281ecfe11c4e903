from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qhopf import (
    LiePresentation,
    TensorElement,
    exp_truncated,
    extend_structure_map,
    invert_element,
    leg_embed,
    nc_mul,
    perm_legs,
)
from qhopf.scalars import HbarPoly, gaussian
from qhopf.tensors import counit_on_leg

ORDER = 2
ABELIAN = LiePresentation(["t1", "t2"])


def gen(i, legs=1, leg=0, coeff=None):
    return TensorElement.generator(ABELIAN, i, ORDER, legs=legs, leg=leg, coeff=coeff)


def unit(legs):
    return TensorElement.unit(ABELIAN, legs, ORDER)


def test_leg_embed_positions():
    x = nc_mul(gen(0, 2, 0), gen(1, 2, 1))      # t1 x t2
    x12 = leg_embed(x, (1, 2), 3)
    assert x12.terms == {((0,), (1,), ()): HbarPoly.one(ORDER)}
    x31 = leg_embed(x, (3, 1), 3)
    assert x31.terms == {((1,), (), (0,)): HbarPoly.one(ORDER)}
    with pytest.raises(ValueError):
        leg_embed(x, (1, 1), 3)
    with pytest.raises(ValueError):
        leg_embed(x, (1,), 3)


def test_exp_truncated():
    # exp(hbar t1 x t2) = 1x1 + hbar t1 x t2 + (hbar^2/2) t1^2 x t2^2
    x = nc_mul(gen(0, 2, 0), gen(1, 2, 1)).scale(HbarPoly.hbar(ORDER))
    e = exp_truncated(x)
    assert e.terms == {
        ((), ()): HbarPoly.one(ORDER),
        ((0,), (1,)): HbarPoly.hbar(ORDER),
        ((0, 0), (1, 1)): HbarPoly.hbar(ORDER, 2, gaussian(Fraction(1, 2))),
    }


def test_exp_requires_nilpotent_part():
    with pytest.raises(ValueError):
        exp_truncated(gen(0, 2, 0))


def test_invert_element():
    x = unit(2) + nc_mul(gen(0, 2, 0), gen(1, 2, 1)).scale(HbarPoly.hbar(ORDER))
    xi = invert_element(x)
    assert nc_mul(x, xi) == unit(2)
    assert nc_mul(xi, x) == unit(2)


def test_invert_rejects_non_unitary_leading_term():
    with pytest.raises(ValueError):
        invert_element(gen(0).scale(HbarPoly.hbar(ORDER)))
    with pytest.raises(ValueError):
        invert_element(unit(1) + gen(0))


def test_extend_structure_map_coproduct():
    # Delta(t1 t2) = t1 t2 x 1 + t1 x t2 + t2 x t1 + 1 x t1 t2
    images = {i: gen(i, 2, 0) + gen(i, 2, 1) for i in (0, 1)}
    x = TensorElement(ABELIAN, 1, ORDER, {((0, 1),): HbarPoly.one(ORDER)})
    d = extend_structure_map("hom", images, x)
    one = HbarPoly.one(ORDER)
    assert d.terms == {
        ((0, 1), ()): one,
        ((0,), (1,)): one,
        ((1,), (0,)): one,
        ((), (0, 1)): one,
    }


def test_extend_structure_map_antipode():
    # S(t1 t2) = S(t2) S(t1) = t2 t1 = t1 t2 in the abelian envelope
    images = {i: -gen(i) for i in (0, 1)}
    x = TensorElement(ABELIAN, 1, ORDER, {((0, 1),): HbarPoly.one(ORDER)})
    s = extend_structure_map("antihom", images, x)
    assert s.terms == {((0, 1),): HbarPoly.one(ORDER)}


def test_extend_structure_map_kind_checked():
    with pytest.raises(ValueError):
        extend_structure_map("linear", {}, gen(0))


def test_counit_on_leg():
    # (eps x id) kills generator legs: eps(t1) = 0
    eps = {0: gaussian(0), 1: gaussian(0)}
    x = gen(0)
    assert counit_on_leg(x, eps, 0) == HbarPoly.zero(ORDER)
    two = nc_mul(gen(0, 2, 0), gen(1, 2, 1)) + unit(2)
    dropped = counit_on_leg(two, eps, 0)
    assert dropped == TensorElement.unit(ABELIAN, 1, ORDER)


def test_nc_mul_rflux_reordering(rflux):
    lie = rflux.hopf.lie
    order = rflux.order
    tt1 = TensorElement.generator(lie, lie.index("tt1"), order)
    m12 = TensorElement.generator(lie, lie.index("m12"), order)
    prod = nc_mul(tt1, m12)
    one = HbarPoly.one(order)
    assert prod.terms == {
        ((lie.index("m12"), lie.index("tt1")),): one,
        ((lie.index("t2"),),): one,
    }


def test_perm_legs_involution():
    x = nc_mul(gen(0, 2, 0), gen(1, 2, 1)) + unit(2).scale(HbarPoly.hbar(ORDER))
    assert perm_legs(perm_legs(x, (2, 1)), (2, 1)) == x


small = st.integers(min_value=-3, max_value=3)


def _elem(pairs):
    terms = []
    for (w1, w2, c) in pairs:
        key = (tuple(sorted(w1)), tuple(sorted(w2)))
        terms.append((key, HbarPoly.hbar(ORDER, 1, gaussian(c))))
    return TensorElement.from_terms(ABELIAN, 2, ORDER, terms)


elems = st.builds(
    _elem,
    st.lists(
        st.tuples(
            st.lists(st.integers(0, 1), max_size=2),
            st.lists(st.integers(0, 1), max_size=2),
            small,
        ),
        max_size=3,
    ),
)


# exp(x) exp(-x) = 1 and exp(x) is inverted by the geometric series
@settings(max_examples=40, deadline=None)
@given(elems)
def test_exp_inverse(x):
    e = exp_truncated(x)
    assert nc_mul(e, exp_truncated(-x)) == unit(2)
    assert invert_element(e) == exp_truncated(-x)


# (x y) z = x (y z) for legwise products
@settings(max_examples=40, deadline=None)
@given(elems, elems, elems)
def test_nc_mul_associative(x, y, z):
    u = unit(2)
    assert nc_mul(nc_mul(u + x, u + y), u + z) == nc_mul(u + x, nc_mul(u + y, u + z))
