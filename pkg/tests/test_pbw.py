import pytest
from hypothesis import given, settings, strategies as st

from qhopf import LiePresentation, preset, word_element
from qhopf.scalars import gaussian, DEFAULT_ORDER


@pytest.fixture(scope="module")
def rflux_lie(rflux):
    return rflux.hopf.lie


def test_inadmissible_ordering_rejected():
    # [g_1, g_2] = g_3 has the target above the pair
    with pytest.raises(ValueError):
        LiePresentation(["a", "b", "c"], {(0, 1): {2: 1}})


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        LiePresentation(["a", "a"])


def test_bracket_antisymmetry():
    lie = LiePresentation(["z", "a", "b"], {(1, 2): {0: 1}})
    assert lie.bracket(1, 2) == {0: gaussian(1)}
    assert lie.bracket(2, 1) == {0: gaussian(-1)}
    assert lie.bracket(1, 1) == {}


def test_rflux_normal_order(rflux_lie):
    lie = rflux_lie
    tt1, m12, t2 = lie.index("tt1"), lie.index("m12"), lie.index("t2")
    # tt1 * m12 = m12 * tt1 + [tt1, m12] = m12 tt1 + t2
    assert lie.normal_order_word((tt1, m12)) == {
        (m12, tt1): gaussian(1),
        (t2,): gaussian(1),
    }


def test_rflux_jacobi(rflux_lie):
    assert rflux_lie.check_jacobi() == []


def test_normal_order_idempotent(rflux_lie):
    lie = rflux_lie
    for word, coeff in lie.normal_order_word((8, 3, 7, 4)).items():
        assert lie.normal_order_word(word) == {word: gaussian(1)}
        assert list(word) == sorted(word)


words = st.lists(st.integers(min_value=0, max_value=8), min_size=0, max_size=4)


# normal ordering is an algebra map: no(u) no(v) = no(u ++ v)
@settings(max_examples=60, deadline=None)
@given(words, words)
def test_normal_order_multiplicative(rflux, u, v):
    lie = rflux.hopf.lie
    lhs = word_element(lie, tuple(u), DEFAULT_ORDER) * word_element(lie, tuple(v), DEFAULT_ORDER)
    rhs = word_element(lie, tuple(u) + tuple(v), DEFAULT_ORDER)
    assert lhs == rhs
