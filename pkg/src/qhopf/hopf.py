"""Quasi-Hopf data, axiom checkers, cochain twisting, antipode gauge.

A QuasiHopfData carries the coalgebra side of a quasi-triangular quasi-Hopf
algebra over U(g)[[hbar]] at fixed truncation order: generator images of the
coproduct/counit/antipode, the distinguished elements alpha and beta, the
associator phi, and (optionally) an R-matrix.  Everything is verified, never
assumed: the check_* functions mechanically test the axioms as exact tensor
identities.
"""

import time
from dataclasses import dataclass

from .scalars import HbarPoly, GaussianRational, GR_ZERO, GR_ONE
from .tensors import (
    TensorElement,
    nc_mul,
    leg_embed,
    perm_legs,
    invert_element,
    apply_on_leg,
    counit_on_leg,
)


def word_element(lie, word, order, coeff=None):
    """The 1-leg element given by a word (normal-ordering it if needed)."""
    if coeff is None:
        coeff = HbarPoly.one(order)
    terms = []
    for w, c in lie.normal_order_word(tuple(word)).items():
        terms.append(((w,), coeff.scale(c)))
    return TensorElement.from_terms(lie, 1, order, terms)


class QuasiHopfData:
    """Coalgebra data for a quasi-Hopf algebra, given on Lie generators."""

    def __init__(self, lie, order, delta_gen, epsilon_gen, antipode_gen,
                 alpha, beta, phi, r_matrix=None):
        self.lie = lie
        self.order = order
        self.delta_gen = dict(delta_gen)
        self.epsilon_gen = {
            g: (c if isinstance(c, GaussianRational) else GaussianRational(c))
            for g, c in epsilon_gen.items()
        }
        self.antipode_gen = dict(antipode_gen)
        self.alpha = alpha
        self.beta = beta
        self.phi = phi
        self.r_matrix = r_matrix
        for g in range(lie.ngen):
            if g not in self.delta_gen:
                raise ValueError("missing coproduct image for %s" % lie.generators[g])
            if g not in self.antipode_gen:
                raise ValueError("missing antipode image for %s" % lie.generators[g])
        if phi.legs != 3:
            raise ValueError("associator must have three legs")
        self._delta_words = {(): TensorElement.unit(lie, 2, order)}
        self._antipode_words = {(): TensorElement.unit(lie, 1, order)}
        self._phi_inv = None
        self._r_inv = None

    # -- cached structure maps on PBW words ---------------------------------

    def delta_word(self, word):
        got = self._delta_words.get(word)
        if got is None:
            got = nc_mul(self.delta_word(word[:-1]), self.delta_gen[word[-1]])
            self._delta_words[word] = got
        return got

    def antipode_word(self, word):
        # S is an anti-homomorphism: S(g1...gk) = S(gk)...S(g1)
        got = self._antipode_words.get(word)
        if got is None:
            got = nc_mul(self.antipode_word(word[1:]), self.antipode_gen[word[0]])
            self._antipode_words[word] = got
        return got

    def counit_word(self, word):
        v = GR_ONE
        for g in word:
            vg = self.epsilon_gen.get(g, GR_ZERO)
            if not vg:
                return GR_ZERO
            v = v * vg
        return v

    # -- structure maps on elements ------------------------------------------

    def delta(self, x):
        return apply_on_leg(x, 0, self.delta_word, 2)

    def delta_on_leg(self, x, leg):
        return apply_on_leg(x, leg, self.delta_word, 2)

    def antipode(self, x):
        return apply_on_leg(x, 0, self.antipode_word, 1)

    def antipode_on_leg(self, x, leg):
        return apply_on_leg(x, leg, self.antipode_word, 1)

    def counit(self, x):
        return counit_on_leg(x, self.epsilon_gen, 0)

    def counit_on_leg(self, x, leg):
        return counit_on_leg(x, self.epsilon_gen, leg)

    def replace(self, **changes):
        """A copy of this data with the given fields substituted."""
        kwargs = dict(
            lie=self.lie, order=self.order, delta_gen=self.delta_gen,
            epsilon_gen=self.epsilon_gen, antipode_gen=self.antipode_gen,
            alpha=self.alpha, beta=self.beta, phi=self.phi,
            r_matrix=self.r_matrix,
        )
        unknown = set(changes) - set(kwargs)
        if unknown:
            raise TypeError("unknown fields: %s" % sorted(unknown))
        kwargs.update(changes)
        return QuasiHopfData(**kwargs)

    @property
    def phi_inv(self):
        if self._phi_inv is None:
            self._phi_inv = invert_element(self.phi)
        return self._phi_inv

    @property
    def r_inv(self):
        if self._r_inv is None:
            if self.r_matrix is None:
                raise ValueError("no R-matrix present")
            self._r_inv = invert_element(self.r_matrix)
        return self._r_inv

    def __eq__(self, other):
        if not isinstance(other, QuasiHopfData):
            return NotImplemented
        return (
            self.lie is other.lie
            and self.order == other.order
            and self.delta_gen == other.delta_gen
            and self.epsilon_gen == other.epsilon_gen
            and self.antipode_gen == other.antipode_gen
            and self.alpha == other.alpha
            and self.beta == other.beta
            and self.phi == other.phi
            and self.r_matrix == other.r_matrix
        )

    __hash__ = None

    def unit(self, legs=1):
        return TensorElement.unit(self.lie, legs, self.order)

    def word_elem(self, word, coeff=None):
        return word_element(self.lie, word, self.order, coeff)

    def generator_elem(self, g):
        return TensorElement.generator(self.lie, g, self.order)

    def __repr__(self):
        tag = "quasitriangular " if self.r_matrix is not None else ""
        return "<%sQuasiHopfData over %r at order %d>" % (tag, self.lie, self.order)


class CochainTwist:
    """Invertible two-leg element; counit normalization checked on use."""

    def __init__(self, f):
        if f.legs != 2:
            raise ValueError("twist must have two legs")
        self.f = f
        self._inv = None

    @property
    def inverse(self):
        if self._inv is None:
            self._inv = invert_element(self.f)
        return self._inv

    @property
    def flipped(self):
        return perm_legs(self.f, (2, 1))

    def __repr__(self):
        return "CochainTwist(%r)" % (self.f,)


@dataclass
class Report:
    """Outcome of one verification; passes exactly when residual is absent."""

    name: str
    status: str
    residual: object = None
    ms: float = 0.0
    anchor: str = ""

    @property
    def passed(self):
        return self.status == "pass"

    def line(self):
        return "%-48s %s" % (self.name, self.status.upper())


def run_identity(name, anchor, fn):
    """Evaluate fn() -> residual (zero-ish means pass) into a Report."""
    t0 = time.perf_counter()
    residual = fn()
    ms = (time.perf_counter() - t0) * 1000.0
    if residual is None or not residual:
        return Report(name, "pass", None, ms, anchor)
    return Report(name, "fail", residual, ms, anchor)


def aggregate(name, reports):
    """Collapse sub-reports into one; first failure wins the residual."""
    ms = sum(r.ms for r in reports)
    for r in reports:
        if not r.passed:
            return Report("%s[%s]" % (name, r.name), "fail", r.residual, ms, r.anchor)
    return Report(name, "pass", None, ms, name)


def default_samples(h, seed=0, npairs=10):
    """Generators plus a deterministic sample of length-2 monomials."""
    import random

    rng = random.Random(seed)
    lie = h.lie
    out = [(g,) for g in range(lie.ngen)]
    pairs = [(i, j) for i in range(lie.ngen) for j in range(i, lie.ngen)]
    rng.shuffle(pairs)
    out.extend(pairs[:npairs])
    return out


# ---------------------------------------------------------------------------
# quasi-bialgebra axioms


def quasibialgebra_reports(h, samples=None):
    if samples is None:
        samples = default_samples(h)
    lie, order = h.lie, h.order
    reports = []

    def bracket_compat():
        for i in range(lie.ngen):
            di = h.delta_gen[i]
            for j in range(i + 1, lie.ngen):
                dj = h.delta_gen[j]
                lhs = nc_mul(di, dj) - nc_mul(dj, di)
                rhs = TensorElement.zero(lie, 2, order)
                for k, c in lie.bracket(i, j).items():
                    rhs = rhs + h.delta_gen[k].scale(c)
                r = lhs - rhs
                if r:
                    return r
        return None

    reports.append(run_identity(
        "coproduct-bracket-compatibility",
        "coproduct.bracket-compatibility", bracket_compat))

    def counit_laws():
        for word in samples:
            x = h.word_elem(word)
            d = h.delta(x)
            left = h.counit_on_leg(d, 0) - x
            if left:
                return left
            right = h.counit_on_leg(d, 1) - x
            if right:
                return right
            # counit kills brackets
        for i in range(lie.ngen):
            for j in range(i + 1, lie.ngen):
                s = GR_ZERO
                for k, c in lie.bracket(i, j).items():
                    s = s + c * h.epsilon_gen.get(k, GR_ZERO)
                if s:
                    return h.unit(1).scale(HbarPoly.const(s, order))
        return None

    reports.append(run_identity(
        "counit-coproduct", "coproduct.counit", counit_laws))

    def quasi_coassoc():
        phi = h.phi
        for word in samples:
            d = h.delta(h.word_elem(word))
            lhs = nc_mul(h.delta_on_leg(d, 1), phi)
            rhs = nc_mul(phi, h.delta_on_leg(d, 0))
            r = lhs - rhs
            if r:
                return r
        return None

    reports.append(run_identity(
        "quasi-coassociativity", "coproduct.quasi-coassociativity", quasi_coassoc))

    def cocycle():
        phi = h.phi
        lhs = nc_mul(h.delta_on_leg(phi, 2), h.delta_on_leg(phi, 0))
        rhs = nc_mul(
            nc_mul(leg_embed(phi, (2, 3, 4), 4), h.delta_on_leg(phi, 1)),
            leg_embed(phi, (1, 2, 3), 4),
        )
        return lhs - rhs

    reports.append(run_identity(
        "associator-cocycle", "associator.pentagon-cocycle", cocycle))

    def counital():
        unit2 = h.unit(2)
        for leg in (1, 0, 2):
            r = h.counit_on_leg(h.phi, leg) - unit2
            if r:
                return r
        return None

    reports.append(run_identity(
        "associator-counital", "associator.counital", counital))

    def invertible():
        return nc_mul(h.phi, h.phi_inv) - h.unit(3)

    reports.append(run_identity(
        "associator-invertible", "associator.invertible", invertible))

    return reports


def check_quasibialgebra(h, samples=None):
    return aggregate("quasi-bialgebra", quasibialgebra_reports(h, samples))


# ---------------------------------------------------------------------------
# quasi-antipode axioms


def quasiantipode_reports(h, samples=None):
    if samples is None:
        samples = default_samples(h)
    lie, order = h.lie, h.order
    reports = []

    def bracket_compat():
        for i in range(lie.ngen):
            si = h.antipode_gen[i]
            for j in range(i + 1, lie.ngen):
                sj = h.antipode_gen[j]
                # S([g_i, g_j]) = S(g_j) S(g_i) - S(g_i) S(g_j)
                lhs = nc_mul(sj, si) - nc_mul(si, sj)
                rhs = TensorElement.zero(lie, 1, order)
                for k, c in lie.bracket(i, j).items():
                    rhs = rhs + h.antipode_gen[k].scale(c)
                r = lhs - rhs
                if r:
                    return r
        return None

    reports.append(run_identity(
        "antipode-bracket-compatibility",
        "antipode.bracket-compatibility", bracket_compat))

    def left_cancel():
        for word in samples:
            x = h.word_elem(word)
            acc = TensorElement.zero(lie, 1, order)
            for (w1, w2), c in h.delta(x).terms.items():
                t = nc_mul(nc_mul(h.antipode_word(w1), h.alpha), h.word_elem(w2))
                acc = acc + t.scale(c)
            r = acc - h.alpha.scale(h.counit(x))
            if r:
                return r
        return None

    reports.append(run_identity(
        "antipode-alpha-cancellation", "antipode.left-alpha", left_cancel))

    def right_cancel():
        for word in samples:
            x = h.word_elem(word)
            acc = TensorElement.zero(lie, 1, order)
            for (w1, w2), c in h.delta(x).terms.items():
                t = nc_mul(nc_mul(h.word_elem(w1), h.beta), h.antipode_word(w2))
                acc = acc + t.scale(c)
            r = acc - h.beta.scale(h.counit(x))
            if r:
                return r
        return None

    reports.append(run_identity(
        "antipode-beta-cancellation", "antipode.right-beta", right_cancel))

    def phi_contract():
        acc = TensorElement.zero(lie, 1, order)
        for (w1, w2, w3), c in h.phi.terms.items():
            t = nc_mul(
                nc_mul(nc_mul(h.word_elem(w1), h.beta), h.antipode_word(w2)),
                nc_mul(h.alpha, h.word_elem(w3)),
            )
            acc = acc + t.scale(c)
        return acc - h.unit(1)

    reports.append(run_identity(
        "associator-beta-alpha-contraction",
        "antipode.associator-contraction", phi_contract))

    def phi_inv_contract():
        acc = TensorElement.zero(lie, 1, order)
        for (w1, w2, w3), c in h.phi_inv.terms.items():
            t = nc_mul(
                nc_mul(nc_mul(h.antipode_word(w1), h.alpha), h.word_elem(w2)),
                nc_mul(h.beta, h.antipode_word(w3)),
            )
            acc = acc + t.scale(c)
        return acc - h.unit(1)

    reports.append(run_identity(
        "inverse-associator-alpha-beta-contraction",
        "antipode.inverse-associator-contraction", phi_inv_contract))

    return reports


def check_quasiantipode(h, samples=None):
    return aggregate("quasi-antipode", quasiantipode_reports(h, samples))


# ---------------------------------------------------------------------------
# quasitriangularity


def quasitriangular_reports(h, samples=None):
    if h.r_matrix is None:
        raise ValueError("no R-matrix present")
    if samples is None:
        samples = default_samples(h)
    reports = []
    r = h.r_matrix
    phi = h.phi
    phi_inv = h.phi_inv

    def intertwine():
        for word in samples:
            d = h.delta(h.word_elem(word))
            dop = perm_legs(d, (2, 1))
            res = nc_mul(r, d) - nc_mul(dop, r)
            if res:
                return res
        return None

    reports.append(run_identity(
        "coproduct-intertwine", "rmatrix.coproduct-intertwine", intertwine))

    def hexagon_second():
        lhs = h.delta_on_leg(r, 1)
        rhs = nc_mul(
            nc_mul(
                nc_mul(
                    nc_mul(leg_embed(phi_inv, (2, 3, 1), 3), leg_embed(r, (1, 3), 3)),
                    leg_embed(phi, (2, 1, 3), 3),
                ),
                leg_embed(r, (1, 2), 3),
            ),
            phi_inv,
        )
        return lhs - rhs

    reports.append(run_identity(
        "hexagon-second-leg", "rmatrix.hexagon-second-leg", hexagon_second))

    def hexagon_first():
        lhs = h.delta_on_leg(r, 0)
        rhs = nc_mul(
            nc_mul(
                nc_mul(
                    nc_mul(leg_embed(phi, (3, 1, 2), 3), leg_embed(r, (1, 3), 3)),
                    leg_embed(phi_inv, (1, 3, 2), 3),
                ),
                leg_embed(r, (2, 3), 3),
            ),
            phi,
        )
        return lhs - rhs

    reports.append(run_identity(
        "hexagon-first-leg", "rmatrix.hexagon-first-leg", hexagon_first))

    def triangular():
        return nc_mul(perm_legs(r, (2, 1)), r) - h.unit(2)

    reports.append(run_identity(
        "triangularity", "rmatrix.triangularity", triangular))

    return reports


def check_quasitriangular(h, samples=None):
    return aggregate("quasitriangular", quasitriangular_reports(h, samples))


# ---------------------------------------------------------------------------
# twisting


def apply_twist(h, twist):
    """Twist the quasi-Hopf data by a cochain twist F.

    Checks the twist's counit normalization, then returns the data with
    coproduct F Delta(.) F^-1, associator
    (1 x F)(id x Delta)(F) phi (Delta x id)(F^-1)(F^-1 x 1),
    alpha_F = S(F^(-1)) alpha F^(-2), beta_F = F^(1) beta S(F^(2)), and
    R_F = F_21 R F^-1.  Counit and antipode are unchanged.
    """
    f = twist.f
    if f.lie is not h.lie or f.order != h.order:
        raise ValueError("twist and Hopf data live over different settings")
    unit1 = h.unit(1)
    for leg in (0, 1):
        if counit_on_leg(f, h.epsilon_gen, leg) - unit1:
            raise ValueError("twist violates counit normalization")
    f_inv = twist.inverse

    delta_gen = {
        g: nc_mul(nc_mul(f, h.delta_gen[g]), f_inv)
        for g in range(h.lie.ngen)
    }

    phi_f = nc_mul(
        nc_mul(
            nc_mul(
                nc_mul(leg_embed(f, (2, 3), 3), apply_on_leg(f, 1, h.delta_word, 2)),
                h.phi,
            ),
            apply_on_leg(f_inv, 0, h.delta_word, 2),
        ),
        leg_embed(f_inv, (1, 2), 3),
    )

    alpha_f = TensorElement.zero(h.lie, 1, h.order)
    for (w1, w2), c in f_inv.terms.items():
        alpha_f = alpha_f + nc_mul(
            nc_mul(h.antipode_word(w1), h.alpha), h.word_elem(w2)
        ).scale(c)

    beta_f = TensorElement.zero(h.lie, 1, h.order)
    for (w1, w2), c in f.terms.items():
        beta_f = beta_f + nc_mul(
            nc_mul(h.word_elem(w1), h.beta), h.antipode_word(w2)
        ).scale(c)

    r_f = None
    if h.r_matrix is not None:
        r_f = nc_mul(nc_mul(twist.flipped, h.r_matrix), f_inv)

    return QuasiHopfData(
        h.lie, h.order, delta_gen, h.epsilon_gen, h.antipode_gen,
        alpha_f, beta_f, phi_f, r_f,
    )


def compose_twists(g, f):
    """The twist G.F (twist first by F, then by G on the twisted data)."""
    return CochainTwist(nc_mul(g.f, f.f))


def invert_unitlike(x):
    """Invert a 1-leg element whose unit coefficient starts at hbar^0.

    The element must be c*(1 + higher hbar order) with c an invertible
    series; everything off the unit monomial has to be O(hbar).
    """
    key = ((),) * x.legs
    c = x.terms.get(key)
    if c is None or not c.coeffs[0]:
        raise ValueError("element is not invertible at hbar^0")
    c_inv = c.inv()
    return invert_element(x.scale(c_inv)).scale(c_inv)


def gauge_transform_antipode(h, u):
    """Gauge the quasi-antipode by an invertible u: S' = u S(.) u^-1."""
    u_inv = invert_unitlike(u)
    antipode_gen = {
        g: nc_mul(nc_mul(u, h.antipode_gen[g]), u_inv)
        for g in range(h.lie.ngen)
    }
    alpha = nc_mul(u, h.alpha)
    beta = nc_mul(h.beta, u_inv)
    return QuasiHopfData(
        h.lie, h.order, h.delta_gen, h.epsilon_gen, antipode_gen,
        alpha, beta, h.phi, h.r_matrix,
    )
