"""Polynomial function algebras acted on by derivation representations.

Carriers are exact polynomials in d commuting coordinates with truncated
hbar-series coefficients.  Lie generators act as first-order differential
operators with polynomial coefficients; the envelope acts through words.
Star products deform the pointwise product through a cochain twist.
"""

from .scalars import HbarPoly, GR_ONE
from .hopf import run_identity, apply_twist


class PolyFunction:
    """Sparse polynomial: exponent tuple -> HbarPoly coefficient."""

    __slots__ = ("dim", "order", "terms")

    def __init__(self, dim, order, terms):
        self.dim = dim
        self.order = order
        self.terms = terms

    @classmethod
    def zero(cls, dim, order):
        return cls(dim, order, {})

    @classmethod
    def const(cls, c, dim, order):
        if not isinstance(c, HbarPoly):
            c = HbarPoly.const(c, order)
        if not c:
            return cls.zero(dim, order)
        return cls(dim, order, {(0,) * dim: c})

    @classmethod
    def coordinate(cls, mu, dim, order):
        e = [0] * dim
        e[mu] = 1
        return cls(dim, order, {tuple(e): HbarPoly.one(order)})

    @classmethod
    def monomial(cls, exps, order, coeff=None):
        exps = tuple(exps)
        if coeff is None:
            coeff = HbarPoly.one(order)
        elif not isinstance(coeff, HbarPoly):
            coeff = HbarPoly.const(coeff, order)
        if not coeff:
            return cls.zero(len(exps), order)
        return cls(len(exps), order, {exps: coeff})

    @classmethod
    def from_terms(cls, dim, order, pairs):
        acc = {}
        for e, c in pairs:
            if not c:
                continue
            prev = acc.get(e)
            s = c if prev is None else prev + c
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
        return cls(dim, order, acc)

    # -- queries ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PolyFunction):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dim, self.order, frozenset(self.terms.items())))

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.dim, HbarPoly.zero(self.order))

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if self.dim != other.dim:
            raise ValueError("polynomials in different variable counts")
        if self.order != other.order:
            raise ValueError("mismatched truncation orders")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            prev = acc.get(e)
            s = c if prev is None else prev + c
            if s:
                acc[e] = s
            elif e in acc:
                del acc[e]
        return PolyFunction(self.dim, self.order, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolyFunction(self.dim, self.order, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyFunction):
            return self.scale(other)
        self._check(other)
        acc = {}
        for e1, c1 in self.terms.items():
            d1 = c1.min_degree()
            for e2, c2 in other.terms.items():
                if d1 + c2.min_degree() > self.order:
                    continue
                c = c1 * c2
                if not c:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = acc.get(e)
                s = c if prev is None else prev + c
                if s:
                    acc[e] = s
                elif e in acc:
                    del acc[e]
        return PolyFunction(self.dim, self.order, acc)

    def scale(self, c):
        if not isinstance(c, HbarPoly):
            c = HbarPoly.const(c, self.order)
        if not c:
            return PolyFunction.zero(self.dim, self.order)
        acc = {}
        for e, v in self.terms.items():
            s = v * c
            if s:
                acc[e] = s
        return PolyFunction(self.dim, self.order, acc)

    __rmul__ = scale

    def derivative(self, mu):
        acc = {}
        for e, c in self.terms.items():
            k = e[mu]
            if not k:
                continue
            ne = e[:mu] + (k - 1,) + e[mu + 1:]
            s = c.scale(k)
            prev = acc.get(ne)
            s = s if prev is None else prev + s
            if s:
                acc[ne] = s
            elif ne in acc:
                del acc[ne]
        return PolyFunction(self.dim, self.order, acc)

    def embed(self, total_dim, offset):
        """View in a larger variable list, shifting variables by offset."""
        pad_l, pad_r = offset, total_dim - offset - self.dim
        acc = {
            (0,) * pad_l + e + (0,) * pad_r: c
            for e, c in self.terms.items()
        }
        return PolyFunction(total_dim, self.order, acc)

    def permute_vars(self, perm):
        """Relabel variables: new variable perm[i] receives old variable i."""
        acc = {}
        for e, c in self.terms.items():
            ne = [0] * self.dim
            for i, k in enumerate(e):
                ne[perm[i]] = k
            acc[tuple(ne)] = c
        return PolyFunction(self.dim, self.order, acc)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(
                "x%d^%d" % (i + 1, k) if k > 1 else "x%d" % (i + 1)
                for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            bits.append("(%r)%s" % (c, "*" + mono if mono else ""))
        return " + ".join(bits)


def all_monomials(dim, max_degree, order, include_const=True):
    """Every monomial of total degree <= max_degree, as PolyFunctions."""
    out = []
    for total in range(0 if include_const else 1, max_degree + 1):
        for e in _exponents(dim, total):
            out.append(PolyFunction.monomial(e, order))
    return out


def _exponents(dim, total):
    if dim == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _exponents(dim - 1, total - first):
            yield (first,) + rest


class DerivationRep:
    """Generator images rho(g) = sum_mu p_mu(x) d/dx_mu."""

    def __init__(self, lie, dim, order, images):
        self.lie = lie
        self.dim = dim
        self.order = order
        self.images = {}
        for g, ops in images.items():
            self.images[g] = tuple((mu, coeff) for mu, coeff in ops)

    def apply_gen(self, g, p):
        acc = PolyFunction.zero(p.dim, p.order)
        for mu, coeff in self.images.get(g, ()):
            acc = acc + coeff * p.derivative(mu)
        return acc

    def apply_word(self, word, p):
        # (g1 g2 ... gk) acts as rho(g1) o rho(g2) o ... o rho(gk)
        for g in reversed(word):
            p = self.apply_gen(g, p)
        return p

    def shifted(self, total_dim, offset):
        """The same operators on a wider variable list (for tensor legs)."""
        images = {
            g: tuple((mu + offset, coeff.embed(total_dim, offset)) for mu, coeff in ops)
            for g, ops in self.images.items()
        }
        return DerivationRep(self.lie, total_dim, self.order, images)


def act(h, p, rep):
    """Apply a 1-leg envelope element to a polynomial through the rep."""
    acc = PolyFunction.zero(p.dim, p.order)
    for (word,), c in h.terms.items():
        acc = acc + rep.apply_word(word, p).scale(c)
    return acc


def check_rep_bracket(rep, lie, degree_bound=2):
    """Verify [rho(g_i), rho(g_j)] = rho([g_i, g_j]) on monomials."""

    def residual():
        monos = all_monomials(rep.dim, degree_bound, rep.order)
        for i in range(lie.ngen):
            for j in range(i + 1, lie.ngen):
                br = lie.bracket(i, j)
                for m in monos:
                    lhs = rep.apply_gen(i, rep.apply_gen(j, m)) \
                        - rep.apply_gen(j, rep.apply_gen(i, m))
                    rhs = PolyFunction.zero(rep.dim, rep.order)
                    for k, c in br.items():
                        rhs = rhs + rep.apply_gen(k, m).scale(c)
                    r = lhs - rhs
                    if r:
                        return r
        return None

    return run_identity("representation-bracket", "rep.bracket", residual)


class AlgebraObject:
    """A polynomial algebra + derivation rep + (possibly twisted) Hopf data.

    `hopf` is the untwisted structure; when a twist is present the deformed
    coalgebra data (coproduct, associator, R-matrix, alpha, beta) is computed
    once and cached as `hopf_f`, and `star` multiplies through the inverse
    twist.  Without a twist, star is the pointwise product.
    """

    def __init__(self, coords, rep, hopf, twist=None):
        self.coords = tuple(coords)
        self.dim = len(self.coords)
        self.rep = rep
        self.hopf = hopf
        self.twist = twist
        self.order = hopf.order
        self._hopf_f = None
        self._f_inv_terms = None

    @property
    def hopf_f(self):
        if self._hopf_f is None:
            if self.twist is None:
                self._hopf_f = self.hopf
            else:
                self._hopf_f = apply_twist(self.hopf, self.twist)
        return self._hopf_f

    # -- carrier constructors ------------------------------------------------

    def coordinate(self, mu):
        return PolyFunction.coordinate(mu, self.dim, self.order)

    def coordinate_by_name(self, name):
        return self.coordinate(self.coords.index(name))

    def one(self):
        return PolyFunction.const(GR_ONE, self.dim, self.order)

    def zero_poly(self):
        return PolyFunction.zero(self.dim, self.order)

    # -- action and product -----------------------------------------------------

    def act(self, h, p):
        return act(h, p, self.rep)

    def star(self, a, b):
        if self.twist is None:
            return a * b
        if self._f_inv_terms is None:
            self._f_inv_terms = tuple(self.twist.inverse.terms.items())
        acc = PolyFunction.zero(a.dim, a.order)
        for (w1, w2), c in self._f_inv_terms:
            ta = self.rep.apply_word(w1, a)
            if not ta:
                continue
            tb = self.rep.apply_word(w2, b)
            if not tb:
                continue
            acc = acc + (ta * tb).scale(c)
        return acc


def star(algebra, a, b):
    """Star product of two carrier polynomials (pointwise if untwisted)."""
    return algebra.star(a, b)


def weak_assoc_defect(algebra, a, b, c):
    """Both associativity defects of the star product.

    Returns (weak, plain): `weak` is the residual of the associator-corrected
    law (a*b)*c = (phi1 |> a)*((phi2 |> b)*(phi3 |> c)), which must vanish;
    `plain` is the naive defect (a*b)*c - a*(b*c), generally nonzero in the
    nonassociative presets.
    """
    star = algebra.star
    lhs = star(star(a, b), c)
    plain = lhs - star(a, star(b, c))
    phi = algebra.hopf_f.phi
    rep = algebra.rep
    acc = PolyFunction.zero(a.dim, a.order)
    for (w1, w2, w3), coeff in phi.terms.items():
        t = star(
            rep.apply_word(w1, a),
            star(rep.apply_word(w2, b), rep.apply_word(w3, c)),
        )
        acc = acc + t.scale(coeff)
    return lhs - acc, plain


def check_braided_commutativity(algebra, samples):
    """a*b = (R2 |> b)*(R1 |> a) on given (a, b) pairs."""

    def residual():
        hf = algebra.hopf_f
        if hf.r_matrix is None:
            raise ValueError("no R-matrix present")
        rep = algebra.rep
        for a, b in samples:
            acc = PolyFunction.zero(a.dim, a.order)
            for (w1, w2), c in hf.r_matrix.terms.items():
                ra = rep.apply_word(w1, a)
                if not ra:
                    continue
                rb = rep.apply_word(w2, b)
                if not rb:
                    continue
                acc = acc + algebra.star(rb, ra).scale(c)
            r = algebra.star(a, b) - acc
            if r:
                return r
        return None

    return run_identity(
        "braided-commutativity", "star.braided-commutativity", residual)
