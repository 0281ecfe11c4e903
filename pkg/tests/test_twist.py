from fractions import Fraction

import pytest

from qhopf import (
    CochainTwist,
    TensorElement,
    apply_twist,
    compose_twists,
    exp_truncated,
    gauge_transform_antipode,
    leg_embed,
    nc_mul,
    preset,
)
from qhopf.hopf import check_quasiantipode, invert_unitlike
from qhopf.scalars import HbarPoly, gaussian


def test_moyal_twist_leaves_coproduct_alone(moyal, moyal_hf):
    h = moyal.hopf
    hf = moyal_hf
    assert hf.delta_gen == h.delta_gen
    assert hf.phi == h.phi
    assert hf.alpha == h.alpha
    assert hf.beta == h.beta


def test_moyal_twist_inverse_coefficient(moyal):
    # F^-1 = exp(+(i hbar / 2) theta^ij t_i x t_j) with theta = [[0,1],[-1,0]]
    order = moyal.order
    fi = moyal.twist.inverse
    c12 = fi.terms[((0,), (1,))]
    assert c12.coeffs[1] == gaussian(0, Fraction(1, 2))
    c21 = fi.terms[((1,), (0,))]
    assert c21.coeffs[1] == gaussian(0, Fraction(-1, 2))
    assert fi.terms[((), ())] == HbarPoly.one(order)


def test_moyal_r_matrix_is_inverse_square(moyal, moyal_hf):
    f = moyal.twist.f
    fi = moyal.twist.inverse
    assert moyal_hf.r_matrix == nc_mul(fi, fi)
    # triangular: R_21 R = 1
    r = moyal_hf.r_matrix
    r21 = leg_embed(r, (2, 1), 2)
    assert nc_mul(r21, r) == TensorElement.unit(moyal.hopf.lie, 2, moyal.order)
    assert nc_mul(f, fi) == TensorElement.unit(moyal.hopf.lie, 2, moyal.order)


def test_rflux_twisted_coproducts(rflux, rflux_hf):
    lie = rflux.hopf.lie
    order = rflux.order
    hf = rflux_hf
    one = HbarPoly.one(order)

    def prim(i):
        return {((i,), ()): one, ((), (i,)): one}

    # Delta_F(t_i) stays primitive
    for name in ("t1", "t2", "t3"):
        i = lie.index(name)
        assert hf.delta_gen[i].terms == prim(i)

    # Delta_F(tt^i) = primitive + (i hbar / 2) R^ijk t_j x t_k
    half_i = HbarPoly.hbar(order, 1, gaussian(0, Fraction(1, 2)))
    t = {name: lie.index(name) for name in ("t1", "t2", "t3")}
    expect = dict(prim(lie.index("tt1")))
    expect[((t["t2"],), (t["t3"],))] = half_i
    expect[((t["t3"],), (t["t2"],))] = -half_i
    assert hf.delta_gen[lie.index("tt1")].terms == expect

    # Delta_F(m_ij) = primitive - i hbar (t_i x t_j - t_j x t_i)
    mi = HbarPoly.hbar(order, 1, gaussian(0, -1))
    expect = dict(prim(lie.index("m12")))
    expect[((t["t1"],), (t["t2"],))] = mi
    expect[((t["t2"],), (t["t1"],))] = -mi
    assert hf.delta_gen[lie.index("m12")].terms == expect


def test_rflux_twisted_associator(rflux, rflux_hf):
    # phi_F = exp((hbar^2 / 2) R^ijk t_i x t_j x t_k)
    lie = rflux.hopf.lie
    order = rflux.order
    half_h2 = HbarPoly.hbar(order, 2, gaussian(Fraction(1, 2)))
    expo = TensorElement.zero(lie, 3, order)
    t = [lie.index(n) for n in ("t1", "t2", "t3")]
    for (i, j, k, s) in (
        (0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1),
        (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1),
    ):
        key = ((t[i],), (t[j],), (t[k],))
        expo = expo + TensorElement(lie, 3, order, {key: half_h2.scale(gaussian(s))})
    assert rflux_hf.phi == exp_truncated(expo)


def test_rflux_twisted_antipode_data(rflux, rflux_hf):
    unit1 = TensorElement.unit(rflux.hopf.lie, 1, rflux.order)
    assert rflux_hf.alpha == unit1
    assert rflux_hf.beta == unit1


def test_rflux_r_matrix_and_flip(rflux, rflux_hf):
    fi = rflux.twist.inverse
    assert rflux_hf.r_matrix == nc_mul(fi, fi)
    # F_21 = F^-1 for this twist
    assert rflux.twist.flipped == fi


def test_twist_roundtrip(rflux, rflux_hf):
    back = apply_twist(rflux_hf, CochainTwist(rflux.twist.inverse))
    assert back == rflux.hopf


def test_twist_composition(moyal):
    h = moyal.hopf
    f = moyal.twist
    hf = apply_twist(h, f)
    # square the twist: Delta_{F.F} = (Delta_F)_F since Delta_F = Delta here
    g = CochainTwist(nc_mul(f.f, f.f))
    lhs = apply_twist(h, compose_twists(g, f))
    rhs = apply_twist(apply_twist(h, f), g)
    assert lhs == rhs
    assert hf.r_matrix is not None


def test_twist_counit_normalization_enforced(moyal):
    lie = moyal.hopf.lie
    order = moyal.order
    bad = TensorElement.unit(lie, 2, order) + TensorElement.generator(
        lie, 0, order, legs=2, leg=0, coeff=HbarPoly.hbar(order)
    )
    with pytest.raises(ValueError):
        apply_twist(moyal.hopf, CochainTwist(bad))


def test_gauge_transform_preserves_antipode_laws(rflux_hf):
    lie = rflux_hf.lie
    order = rflux_hf.order
    u = TensorElement.unit(lie, 1, order) + TensorElement.generator(
        lie, lie.index("t1"), order, coeff=HbarPoly.hbar(order)
    )
    hg = gauge_transform_antipode(rflux_hf, u)
    assert hg.alpha == nc_mul(u, rflux_hf.alpha)
    rep = check_quasiantipode(hg)
    assert rep.passed


def test_gauge_transform_rejects_non_invertible(rflux_hf):
    lie = rflux_hf.lie
    order = rflux_hf.order
    u = TensorElement.generator(lie, 0, order, coeff=HbarPoly.hbar(order))
    with pytest.raises(ValueError):
        gauge_transform_antipode(rflux_hf, u)


def test_invert_unitlike_scaled_unit(moyal):
    lie = moyal.hopf.lie
    order = moyal.order
    x = TensorElement.unit(lie, 1, order).scale(
        HbarPoly.const(gaussian(2), order)
    ) + TensorElement.generator(lie, 0, order, coeff=HbarPoly.hbar(order))
    xi = invert_unitlike(x)
    assert nc_mul(x, xi) == TensorElement.unit(lie, 1, order)


def test_preset_validation_errors():
    with pytest.raises(ValueError):
        preset("moyal", theta=[[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        preset("rflux", r=[[[0, 0, 0], [0, 0, 1], [0, -1, 0]],
                           [[0, 0, -1], [0, 0, 0], [1, 0, 0]],
                           [[0, 1, 0], [-1, 0, 0], [0, 0, 1]]])
    with pytest.raises(ValueError):
        preset("nosuch")
