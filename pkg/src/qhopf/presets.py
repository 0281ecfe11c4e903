"""Built-in models: classical, Moyal-Weyl, and the nonassociative R-flux.

Each preset assembles an admissibly ordered Lie presentation, the classical
quasi-Hopf data on its envelope (primitive coproduct, S = -id on generators,
alpha = beta = 1, trivial associator and R-matrix), a cochain twist, and a
faithful derivation representation on a polynomial carrier.
"""

from fractions import Fraction
from dataclasses import dataclass

from .scalars import HbarPoly, GaussianRational, DEFAULT_ORDER
from .pbw import LiePresentation
from .tensors import TensorElement, exp_truncated
from .hopf import QuasiHopfData, CochainTwist
from .polyfun import PolyFunction, DerivationRep, AlgebraObject


@dataclass
class Preset:
    name: str
    hopf: QuasiHopfData
    twist: object            # CochainTwist or None
    algebra: AlgebraObject

    @property
    def hopf_f(self):
        return self.algebra.hopf_f

    @property
    def rep(self):
        return self.algebra.rep

    @property
    def order(self):
        return self.hopf.order


def preset(name, order=DEFAULT_ORDER, **params):
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise ValueError(
            "unknown preset %r (expected one of %s)"
            % (name, ", ".join(sorted(_BUILDERS)))
        )
    return builder(order, **params)


def trivial_twist(lie, order):
    return CochainTwist(TensorElement.unit(lie, 2, order))


def _classical_data(lie, order, r_matrix=None):
    """Primitive coproduct, counit zero, antipode -id, trivial phi."""
    delta_gen = {}
    antipode_gen = {}
    for g in range(lie.ngen):
        delta_gen[g] = (
            TensorElement.generator(lie, g, order, legs=2, leg=0)
            + TensorElement.generator(lie, g, order, legs=2, leg=1)
        )
        antipode_gen[g] = -TensorElement.generator(lie, g, order)
    unit1 = TensorElement.unit(lie, 1, order)
    phi = TensorElement.unit(lie, 3, order)
    if r_matrix is None:
        r_matrix = TensorElement.unit(lie, 2, order)
    return QuasiHopfData(
        lie, order, delta_gen, {g: 0 for g in range(lie.ngen)},
        antipode_gen, unit1, unit1, phi, r_matrix,
    )


def _build_classical(order, d=2):
    if d < 1:
        raise ValueError("need at least one coordinate")
    lie = LiePresentation(["t%d" % (i + 1) for i in range(d)])
    hopf = _classical_data(lie, order)
    coords = ["x%d" % (i + 1) for i in range(d)]
    images = {
        i: [(i, PolyFunction.const(1, d, order))]
        for i in range(d)
    }
    rep = DerivationRep(lie, d, order, images)
    algebra = AlgebraObject(coords, rep, hopf, twist=None)
    return Preset("classical", hopf, None, algebra)


def _as_gaussian(v):
    if isinstance(v, GaussianRational):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussianRational(v)
    if isinstance(v, str):
        return GaussianRational(Fraction(v))
    raise ValueError("cannot interpret %r as an exact scalar" % (v,))


def _build_moyal(order, d=2, theta=None):
    if d < 1:
        raise ValueError("need at least one coordinate")
    if theta is None:
        theta = [[0] * d for _ in range(d)]
        for i in range(0, d - 1, 2):
            theta[i][i + 1] = 1
            theta[i + 1][i] = -1
    mat = [[_as_gaussian(theta[i][j]) for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            if mat[i][j] != -mat[j][i]:
                raise ValueError("theta must be antisymmetric")
    lie = LiePresentation(["t%d" % (i + 1) for i in range(d)])
    hopf = _classical_data(lie, order)

    # F = exp(-(i hbar / 2) theta^{ij} t_i x t_j)
    half_i = GaussianRational(0, Fraction(-1, 2))
    terms = []
    for i in range(d):
        for j in range(d):
            c = mat[i][j]
            if not c:
                continue
            terms.append((((i,), (j,)), HbarPoly.hbar(order, 1, half_i * c)))
    exponent = TensorElement.from_terms(lie, 2, order, terms)
    twist = CochainTwist(exp_truncated(exponent))

    coords = ["x%d" % (i + 1) for i in range(d)]
    images = {
        i: [(i, PolyFunction.const(1, d, order))]
        for i in range(d)
    }
    rep = DerivationRep(lie, d, order, images)
    algebra = AlgebraObject(coords, rep, hopf, twist)
    return Preset("moyal", hopf, twist, algebra)


def build_r_tensor(n, value):
    """Normalize user input into a totally antisymmetric n x n x n array.

    Accepts a full nested list, or a bare scalar meaning R^{123} = scalar
    (n = 3 only).  Raises ValueError if the result is not totally
    antisymmetric.
    """
    zero = GaussianRational(0)
    if value is None:
        value = 1
    if isinstance(value, (int, str, Fraction, GaussianRational)):
        if n != 3:
            raise ValueError("scalar R shorthand only makes sense for n = 3")
        c = _as_gaussian(value)
        r = [[[zero] * n for _ in range(n)] for _ in range(n)]
        from itertools import permutations
        for perm in permutations(range(3)):
            sign = _perm_sign(perm)
            i, j, k = perm
            r[i][j][k] = c * sign
        return r
    r = [[[_as_gaussian(value[i][j][k]) for k in range(n)] for j in range(n)]
         for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if r[i][j][k] != -r[j][i][k] or r[i][j][k] != -r[i][k][j]:
                    raise ValueError("R must be totally antisymmetric")
    return r


def _perm_sign(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _build_rflux(order, n=3, r=None):
    if n < 2:
        raise ValueError("need at least two coordinates")
    rt = build_r_tensor(n, r)

    # generator ordering: t_1..t_n < m_{ij} (i<j, lexicographic) < tt_1..tt_n
    names = ["t%d" % (i + 1) for i in range(n)]
    m_index = {}
    for i in range(n):
        for j in range(i + 1, n):
            m_index[(i, j)] = n + len(m_index)
            names.append("m%d%d" % (i + 1, j + 1))
    tt0 = n + len(m_index)
    names.extend("tt%d" % (i + 1) for i in range(n))

    # [tt^i, m_jk] = delta^i_j t_k - delta^i_k t_j, stored as [m_jk, tt^i]
    brackets = {}
    for (j, k), mi in m_index.items():
        for i in range(n):
            comps = {}
            if i == j:
                comps[k] = GaussianRational(-1)
            if i == k:
                comps[j] = GaussianRational(1)
            comps = {g: c for g, c in comps.items() if c}
            if comps:
                brackets[(mi, tt0 + i)] = comps
    lie = LiePresentation(names, brackets)
    hopf = _classical_data(lie, order)

    # F = exp(-(i hbar/2)[ (1/2) R^{ijk} m_ij x t_k  -  (1/2) R^{ijk} t_i x m_jk
    #                      + t_i x tt^i - tt^i x t_i ])   (sums over i<j / j<k)
    half_i = GaussianRational(0, Fraction(-1, 2))
    quarter_i = GaussianRational(0, Fraction(-1, 4))
    terms = []
    for (i, j), mi in m_index.items():
        for k in range(n):
            c = rt[i][j][k]
            if c:
                terms.append((((mi,), (k,)), HbarPoly.hbar(order, 1, quarter_i * c)))
    for i in range(n):
        for (j, k), mi in m_index.items():
            c = rt[i][j][k]
            if c:
                terms.append((((i,), (mi,)), HbarPoly.hbar(order, 1, -quarter_i * c)))
    for i in range(n):
        terms.append((((i,), (tt0 + i,)), HbarPoly.hbar(order, 1, half_i)))
        terms.append((((tt0 + i,), (i,)), HbarPoly.hbar(order, 1, -half_i)))
    exponent = TensorElement.from_terms(lie, 2, order, terms)
    twist = CochainTwist(exp_truncated(exponent))

    # phase-space representation on (x^1..x^n, p_1..p_n)
    dim = 2 * n
    coords = ["x%d" % (i + 1) for i in range(n)] + ["p%d" % (i + 1) for i in range(n)]
    one = PolyFunction.const(1, dim, order)
    images = {}
    for i in range(n):
        images[i] = [(i, one)]                     # t_i -> d/dx^i
        images[tt0 + i] = [(n + i, one)]           # tt^i -> d/dp_i
    for (i, j), mi in m_index.items():
        pi = PolyFunction.coordinate(n + i, dim, order)
        pj = PolyFunction.coordinate(n + j, dim, order)
        images[mi] = [(j, pi), (i, -pj)]           # m_ij -> p_i d/dx^j - p_j d/dx^i
    rep = DerivationRep(lie, dim, order, images)
    algebra = AlgebraObject(coords, rep, hopf, twist)
    return Preset("rflux", hopf, twist, algebra)


_BUILDERS = {
    "classical": _build_classical,
    "moyal": _build_moyal,
    "rflux": _build_rflux,
}
