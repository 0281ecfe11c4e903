"""Elements of U(g)^{tensor n} over Q(i)[[hbar]]/(hbar^{N+1}).

A TensorElement is a sparse sum of pure tensors of normal-ordered PBW
monomials.  Keys are n-tuples of monomials (each a tuple of generator
indices), values are truncated hbar-series.  All products re-normal-order
leg by leg and drop anything beyond the truncation order.
"""

import math
from fractions import Fraction

from .scalars import HbarPoly, GaussianRational, GR_ZERO, GR_ONE


class TensorElement:

    __slots__ = ("lie", "legs", "order", "terms", "_mindeg")

    def __init__(self, lie, legs, order, terms):
        self.lie = lie
        self.legs = legs
        self.order = order
        self.terms = terms            # dict: key -> HbarPoly, no zero values
        self._mindeg = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, lie, legs, order):
        return cls(lie, legs, order, {})

    @classmethod
    def unit(cls, lie, legs, order):
        key = ((),) * legs
        return cls(lie, legs, order, {key: HbarPoly.one(order)})

    @classmethod
    def from_terms(cls, lie, legs, order, terms):
        """Build from an iterable of (key, HbarPoly), merging and pruning."""
        acc = {}
        for key, c in terms:
            if not c:
                continue
            prev = acc.get(key)
            s = c if prev is None else prev + c
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        return cls(lie, legs, order, acc)

    @classmethod
    def generator(cls, lie, idx, order, legs=1, leg=0, coeff=None):
        """coeff * (1 x .. x g_idx x .. x 1) with g_idx on the given leg."""
        if coeff is None:
            coeff = HbarPoly.one(order)
        key = tuple((idx,) if t == leg else () for t in range(legs))
        if not coeff:
            return cls.zero(lie, legs, order)
        return cls(lie, legs, order, {key: coeff})

    # -- queries -------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_unit(self):
        if len(self.terms) != 1:
            return False
        key = ((),) * self.legs
        c = self.terms.get(key)
        return c is not None and c == HbarPoly.one(self.order)

    def min_degree(self):
        if self._mindeg is None:
            self._mindeg = min(
                (c.min_degree() for c in self.terms.values()),
                default=self.order + 1,
            )
        return self._mindeg

    def coefficient(self, key):
        return self.terms.get(key, HbarPoly.zero(self.order))

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.legs == other.legs
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.legs, self.order, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- linear structure ------------------------------------------------------

    def _check(self, other):
        if self.lie is not other.lie:
            raise ValueError("elements over different presentations")
        if self.legs != other.legs:
            raise ValueError("mismatched leg counts (%d vs %d)" % (self.legs, other.legs))
        if self.order != other.order:
            raise ValueError("mismatched truncation orders")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for key, c in other.terms.items():
            prev = acc.get(key)
            s = c if prev is None else prev + c
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        return TensorElement(self.lie, self.legs, self.order, acc)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TensorElement(
            self.lie, self.legs, self.order,
            {k: -c for k, c in self.terms.items()},
        )

    def scale(self, c):
        """Multiply by an HbarPoly or plain scalar."""
        if not isinstance(c, HbarPoly):
            c = HbarPoly.const(c, self.order)
        if not c:
            return TensorElement.zero(self.lie, self.legs, self.order)
        out = {}
        for key, v in self.terms.items():
            s = v * c
            if s:
                out[key] = s
        return TensorElement(self.lie, self.legs, self.order, out)

    def __mul__(self, other):
        if isinstance(other, TensorElement):
            return nc_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for key in sorted(self.terms):
            c = self.terms[key]
            legs = " x ".join(self.lie.word_str(w) for w in key)
            bits.append("(%r)*[%s]" % (c, legs))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# products


def nc_mul(x, y):
    """Legwise noncommutative product with PBW re-normal-ordering."""
    x._check(y)
    lie = x.lie
    order = x.order
    n = x.legs
    out = {}
    no = lie.normal_order_word
    abelian = lie.is_abelian
    # bucket the right factor by coefficient hbar-degree; anything whose
    # combined degree exceeds the truncation order is skipped wholesale
    tmp = {}
    for ky, cy in y.terms.items():
        d = cy.min_degree()
        got = tmp.get(d)
        if got is None:
            tmp[d] = [(ky, cy)]
        else:
            got.append((ky, cy))
    ybuckets = sorted(tmp.items())
    legs = range(n)
    for kx, cx in x.terms.items():
        lim = order - cx.min_degree()
        for dy, items in ybuckets:
            if dy > lim:
                break
            for ky, cy in items:
                coeff = cx * cy
                if abelian:
                    key = tuple(
                        ky[t] if not kx[t]
                        else (kx[t] if not ky[t] else tuple(sorted(kx[t] + ky[t])))
                        for t in legs
                    )
                    prev = out.get(key)
                    s = coeff if prev is None else prev + coeff
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
                    continue
                partial = [((), GR_ONE)]
                ok = True
                for t in legs:
                    w = kx[t] + ky[t]
                    if not w or _is_sorted(w):
                        partial = [(key + (w,), c) for key, c in partial]
                        continue
                    expanded = no(w)
                    if not expanded:
                        ok = False
                        break
                    nxt = []
                    for key, c in partial:
                        for wt, cw in expanded.items():
                            nxt.append((key + (wt,), c * cw))
                    partial = nxt
                if not ok:
                    continue
                for key, c in partial:
                    s = coeff if c is GR_ONE else coeff.scale(c)
                    prev = out.get(key)
                    s = s if prev is None else prev + s
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
    return TensorElement(lie, n, order, out)


def _is_sorted(w):
    for t in range(len(w) - 1):
        if w[t] > w[t + 1]:
            return False
    return True


def leg_embed(x, positions, legs):
    """Place the legs of x into slots `positions` (1-based) of a wider product.

    leg t of x lands on leg positions[t]; all other legs carry 1.  Distinct
    positions required.  Example: leg_embed(X, (1, 2), 3) is X x 1 and
    leg_embed(X, (3, 1), 3) puts X's first leg on slot 3 and second on slot 1.
    """
    if len(positions) != x.legs:
        raise ValueError("need one position per leg")
    pos = [p - 1 for p in positions]
    if len(set(pos)) != len(pos) or any(p < 0 or p >= legs for p in pos):
        raise ValueError("positions must be distinct and within 1..legs")
    out = {}
    for key, c in x.terms.items():
        nk = [()] * legs
        for t, p in enumerate(pos):
            nk[p] = key[t]
        out[tuple(nk)] = c
    return TensorElement(x.lie, legs, x.order, out)


def perm_legs(x, positions):
    """Permute legs: leg t of x becomes leg positions[t] (1-based)."""
    return leg_embed(x, positions, x.legs)


def fuse_legs(x, groups):
    """Multiply groups of legs together, one output leg per group.

    groups is a sequence of tuples of 0-based leg indices; every leg of x
    must appear exactly once.  Output leg j carries the ordered product of
    the group's words, re-normal-ordered.  Example: fuse_legs(X, ((0,), (1, 2)))
    turns a 3-leg element into a 2-leg one by multiplying legs 1 and 2.
    """
    seen = [idx for grp in groups for idx in grp]
    if sorted(seen) != list(range(x.legs)):
        raise ValueError("groups must cover each leg exactly once")
    lie, order = x.lie, x.order
    no = lie.normal_order_word
    abelian = lie.is_abelian
    out = {}
    for key, c in x.terms.items():
        partial = [((), GR_ONE)]
        ok = True
        for grp in groups:
            w = ()
            for idx in grp:
                w = w + key[idx]
            if not w or abelian or _is_sorted(w):
                fused = tuple(sorted(w)) if (abelian and w) else w
                partial = [(pk + (fused,), pc) for pk, pc in partial]
                continue
            expanded = no(w)
            if not expanded:
                ok = False
                break
            nxt = []
            for pk, pc in partial:
                for wt, cw in expanded.items():
                    nxt.append((pk + (wt,), pc * cw))
            partial = nxt
        if not ok:
            continue
        for nk, pc in partial:
            s = c if pc is GR_ONE else c.scale(pc)
            prev = out.get(nk)
            s2 = s if prev is None else prev + s
            if s2:
                out[nk] = s2
            elif nk in out:
                del out[nk]
    return TensorElement(lie, len(groups), order, out)


def invert_element(x):
    """Inverse of x = unit + higher hbar-order, by the geometric series.

    Requires the hbar^0 part of x to be exactly the unit tensor.
    """
    unit = TensorElement.unit(x.lie, x.legs, x.order)
    y = x - unit
    if y.min_degree() < 1:
        raise ValueError("invert_element: hbar^0 part is not the unit")
    acc = unit
    power = unit
    for k in range(1, x.order + 1):
        power = nc_mul(power, y)
        if power.is_zero():
            break
        acc = acc + (power if k % 2 == 0 else -power)
    return acc


def exp_truncated(x):
    """exp(x) truncated at the hbar order; needs x = O(hbar)."""
    if x.min_degree() < 1:
        raise ValueError("exp_truncated: argument has an hbar^0 part")
    acc = TensorElement.unit(x.lie, x.legs, x.order)
    power = acc
    for k in range(1, x.order + 1):
        power = nc_mul(power, x)
        if power.is_zero():
            break
        acc = acc + power.scale(GaussianRational(Fraction(1, math.factorial(k))))
    return acc


# ---------------------------------------------------------------------------
# structure maps


def extend_structure_map(kind, images, x):
    """Extend generator images to PBW monomials multiplicatively.

    kind is "hom" (algebra map) or "antihom" (reversed factors).  images maps
    each generator index to a TensorElement with a common leg count p; words
    are sent to the ordered product of their factor images.  Returns the
    image of the 1-leg element x.
    """
    if kind not in ("hom", "antihom"):
        raise ValueError("kind must be 'hom' or 'antihom'")
    if x.legs != 1:
        raise ValueError("extend_structure_map expects a single-leg element")
    lie, order = x.lie, x.order
    p = None
    for im in images.values():
        if p is None:
            p = im.legs
        elif im.legs != p:
            raise ValueError("generator images have mixed leg counts")
    if p is None:
        p = 1
    out = TensorElement.zero(lie, p, order)
    for (word,), c in x.terms.items():
        img = _word_image(kind, images, lie, p, order, word)
        out = out + img.scale(c)
    return out


def _word_image(kind, images, lie, p, order, word):
    acc = TensorElement.unit(lie, p, order)
    seq = word if kind == "hom" else tuple(reversed(word))
    for g in seq:
        try:
            img = images[g]
        except KeyError:
            raise KeyError("no image for generator %r" % (lie.generators[g],))
        acc = nc_mul(acc, img)
    return acc


def apply_on_leg(x, leg, fn, out_legs):
    """Replace leg `leg` (0-based) of x by its image under fn.

    fn maps a word (tuple of indices) to a TensorElement with out_legs legs;
    the image is spliced in place of the leg.  Coefficients multiply.
    """
    lie, order = x.lie, x.order
    total = x.legs - 1 + out_legs
    acc = {}
    for key, c in x.terms.items():
        img = fn(key[leg])
        before, after = key[:leg], key[leg + 1:]
        for fkey, fc in img.terms.items():
            s = c * fc
            if not s:
                continue
            nk = before + fkey + after
            prev = acc.get(nk)
            s2 = s if prev is None else prev + s
            if s2:
                acc[nk] = s2
            elif nk in acc:
                del acc[nk]
    return TensorElement(lie, total, order, acc)


def counit_on_leg(x, eps_gen, leg):
    """Apply the counit on one leg (dropping it).

    eps_gen maps generator index -> GaussianRational; words go to the product
    of their factors' values.  For a 1-leg element the result is the HbarPoly
    scalar instead of a TensorElement.
    """
    lie, order = x.lie, x.order
    if x.legs == 1:
        total = HbarPoly.zero(order)
        for (word,), c in x.terms.items():
            v = _eps_word(eps_gen, word)
            if v:
                total = total + c.scale(v)
        return total
    acc = {}
    for key, c in x.terms.items():
        v = _eps_word(eps_gen, key[leg])
        if not v:
            continue
        nk = key[:leg] + key[leg + 1:]
        s = c.scale(v)
        prev = acc.get(nk)
        s2 = s if prev is None else prev + s
        if s2:
            acc[nk] = s2
        elif nk in acc:
            del acc[nk]
    return TensorElement(lie, x.legs - 1, order, acc)


def _eps_word(eps_gen, word):
    v = GR_ONE
    for g in word:
        vg = eps_gen.get(g, GR_ZERO)
        if not vg:
            return GR_ZERO
        v = v * vg
    return v
