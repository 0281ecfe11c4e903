import pytest

from qhopf import (
    DerivationRep,
    TensorElement,
    check_quasiantipode,
    check_quasibialgebra,
    check_quasitriangular,
)
from qhopf.hopf import (
    quasiantipode_reports,
    quasibialgebra_reports,
    quasitriangular_reports,
)
from qhopf.polyfun import check_rep_bracket
from qhopf.scalars import HbarPoly


def _structures(classical, moyal_hf, rflux_hf):
    return [
        ("classical", classical.hopf),
        ("moyal", moyal_hf),
        ("rflux", rflux_hf),
    ]


def test_quasibialgebra_axioms(classical, moyal_hf, rflux_hf):
    for name, h in _structures(classical, moyal_hf, rflux_hf):
        rep = check_quasibialgebra(h)
        assert rep.passed, f"{name}: {rep.residual}"


def test_quasiantipode_axioms(classical, moyal_hf, rflux_hf):
    for name, h in _structures(classical, moyal_hf, rflux_hf):
        rep = check_quasiantipode(h)
        assert rep.passed, f"{name}: {rep.residual}"


def test_quasitriangular_axioms(classical, moyal_hf, rflux_hf):
    for name, h in _structures(classical, moyal_hf, rflux_hf):
        if h.r_matrix is None:
            continue
        rep = check_quasitriangular(h)
        assert rep.passed, f"{name}: {rep.residual}"


def test_classical_r_matrix_is_unit(classical):
    h = classical.hopf
    assert h.r_matrix == TensorElement.unit(h.lie, 2, h.order)
    assert check_quasitriangular(h).passed


def test_report_lines_carry_anchors(rflux_hf):
    reports = quasibialgebra_reports(rflux_hf)
    anchors = {r.anchor for r in reports}
    assert "associator.pentagon-cocycle" in anchors
    assert "coproduct.quasi-coassociativity" in anchors
    for r in reports:
        assert r.line().endswith("PASS")


def _perturb_unit3(h, coeff):
    bump = TensorElement.generator(
        h.lie, 0, h.order, legs=3, leg=0, coeff=coeff
    )
    return bump


# A wrong associator must be caught by the pentagon cocycle check.
def test_corrupted_associator_fails_cocycle(moyal_hf):
    h = moyal_hf
    bad_phi = h.phi + _perturb_unit3(h, HbarPoly.hbar(h.order))
    hbad = h.replace(phi=bad_phi)
    reports = {r.name: r for r in quasibialgebra_reports(hbad)}
    assert not reports["associator-cocycle"].passed
    assert reports["associator-cocycle"].residual


# A wrong R-matrix must be caught by a hexagon relation.
def test_corrupted_r_matrix_fails_hexagon(rflux_hf):
    h = rflux_hf
    bump = TensorElement.generator(
        h.lie, h.lie.index("t1"), h.order, legs=2, leg=0,
        coeff=HbarPoly.hbar(h.order),
    )
    hbad = h.replace(r_matrix=h.r_matrix + bump)
    reports = quasitriangular_reports(hbad)
    failed = {r.anchor for r in reports if not r.passed}
    assert failed & {"rmatrix.hexagon-second-leg", "rmatrix.hexagon-first-leg"}


# A wrong alpha must break an antipode contraction law.
def test_corrupted_alpha_fails_antipode_law(moyal_hf):
    h = moyal_hf
    bump = TensorElement.generator(
        h.lie, 0, h.order, coeff=HbarPoly.hbar(h.order)
    )
    hbad = h.replace(alpha=h.alpha + bump)
    reports = quasiantipode_reports(hbad)
    assert any(not r.passed for r in reports)


# Zeroing out a rotation generator's image must break the bracket check.
def test_corrupted_rep_fails_bracket(rflux):
    rep = rflux.algebra.rep
    images = dict(rep.images)
    images[rep.lie.index("m12")] = ()
    bad = DerivationRep(rep.lie, rep.dim, rep.order, images)
    assert check_rep_bracket(rep, rep.lie).passed
    assert not check_rep_bracket(bad, rep.lie).passed


def test_rep_brackets_hold(classical, moyal, rflux):
    for p in (classical, moyal, rflux):
        assert check_rep_bracket(p.algebra.rep, p.hopf.lie).passed


def test_antipode_gauge_reports_names(classical):
    reports = quasiantipode_reports(classical.hopf)
    names = [r.name for r in reports]
    assert len(names) == len(set(names))
    assert all(r.passed for r in reports)


def test_aggregate_residual_points_at_first_failure(moyal_hf):
    h = moyal_hf
    bad_phi = h.phi + _perturb_unit3(h, HbarPoly.hbar(h.order))
    hbad = h.replace(phi=bad_phi)
    rep = check_quasibialgebra(hbad)
    assert not rep.passed
    assert rep.residual


def test_replace_rejects_unknown_field(classical):
    with pytest.raises(TypeError):
        classical.hopf.replace(gamma=classical.hopf.alpha)
