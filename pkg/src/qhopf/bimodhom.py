"""Free bimodules over the quantized function algebra and their internal homs.

A module carrier is described by a shape: either an integer rank m (the free
module A^m over one copy of the coordinates) or a pair of shapes (a tensor
product of two carriers, each leaf owning its own block of d variables).
Elements are vectors of polynomials in all leaf variables, one component per
product of leaf ranks; linear operators are block matrices whose entries are
finite sums  u |-> coef * (w_1 x ... x w_k |> u)  of a pointwise polynomial
multiplication after enveloping-algebra words act leafwise through the
representation.

The Hopf structure enters through the leaf splitting of a word along the
shape tree (iterated coproduct), the adjoint action on operators, and the
associator/antipode corrections in the evaluation and composition maps of the
internal hom.  All arithmetic is exact and truncated at the fixed hbar order.
"""

from .scalars import HbarPoly, GR_ONE
from .tensors import TensorElement, nc_mul, leg_embed, fuse_legs
from .hopf import word_element, run_identity
from .polyfun import PolyFunction, all_monomials


# ---------------------------------------------------------------------------
# shapes


def shape_leaves(shape):
    """Flatten a shape tree into its tuple of leaf ranks."""
    if isinstance(shape, int):
        return (shape,)
    left, right = shape
    return shape_leaves(left) + shape_leaves(right)


def shape_rank(shape):
    r = 1
    for m in shape_leaves(shape):
        r *= m
    return r


def shape_nleaves(shape):
    return len(shape_leaves(shape))


# ---------------------------------------------------------------------------
# module elements


class FreeBimoduleVec:
    """Element of a shaped free module: one polynomial per component."""

    __slots__ = ("shape", "d", "order", "entries")

    def __init__(self, shape, d, order, entries):
        self.shape = shape
        self.d = d
        self.order = order
        self.entries = tuple(entries)
        if len(self.entries) != shape_rank(shape):
            raise ValueError("entry count does not match the shape rank")

    @classmethod
    def zero(cls, shape, d, order):
        dim = shape_nleaves(shape) * d
        z = PolyFunction.zero(dim, order)
        return cls(shape, d, order, (z,) * shape_rank(shape))

    @classmethod
    def basis(cls, shape, d, order, i):
        dim = shape_nleaves(shape) * d
        z = PolyFunction.zero(dim, order)
        one = PolyFunction.const(GR_ONE, dim, order)
        rank = shape_rank(shape)
        return cls(shape, d, order, tuple(one if t == i else z for t in range(rank)))

    @property
    def rank(self):
        return len(self.entries)

    @property
    def dim(self):
        return shape_nleaves(self.shape) * self.d

    def is_zero(self):
        return all(not p for p in self.entries)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, FreeBimoduleVec):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("mismatched module shapes")
        return FreeBimoduleVec(
            self.shape, self.d, self.order,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FreeBimoduleVec(
            self.shape, self.d, self.order, tuple(-p for p in self.entries)
        )

    def scale(self, c):
        return FreeBimoduleVec(
            self.shape, self.d, self.order,
            tuple(p.scale(c) for p in self.entries),
        )

    def __repr__(self):
        return "FreeBimoduleVec(%r, [%s])" % (
            self.shape, ", ".join(repr(p) for p in self.entries)
        )


# ---------------------------------------------------------------------------
# operator entries


class OperatorEntry:
    """Finite sum of terms  u |-> coef * ((w_1 x .. x w_k) |> u).

    Keys are k-tuples of normal-ordered words (one per source leaf); values
    are the polynomial coefficients, multiplied pointwise after the action.
    Zero coefficients are never stored.
    """

    __slots__ = ("nleaves", "dim", "order", "terms")

    def __init__(self, nleaves, dim, order, terms):
        self.nleaves = nleaves
        self.dim = dim
        self.order = order
        self.terms = terms

    @classmethod
    def zero(cls, nleaves, dim, order):
        return cls(nleaves, dim, order, {})

    @classmethod
    def from_terms(cls, nleaves, dim, order, pairs):
        acc = {}
        for key, coef in pairs:
            if not coef:
                continue
            prev = acc.get(key)
            s = coef if prev is None else prev + coef
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        return cls(nleaves, dim, order, acc)

    @classmethod
    def pointwise(cls, nleaves, dim, order, coef):
        """Multiplication by a polynomial (no derivative part)."""
        if not coef:
            return cls.zero(nleaves, dim, order)
        return cls(nleaves, dim, order, {((),) * nleaves: coef})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, OperatorEntry):
            return NotImplemented
        return self.nleaves == other.nleaves and self.terms == other.terms

    def __hash__(self):
        return hash((self.nleaves, frozenset(self.terms.items())))

    def __add__(self, other):
        acc = dict(self.terms)
        for key, coef in other.terms.items():
            prev = acc.get(key)
            s = coef if prev is None else prev + coef
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        return OperatorEntry(self.nleaves, self.dim, self.order, acc)

    def __neg__(self):
        return OperatorEntry(
            self.nleaves, self.dim, self.order,
            {k: -c for k, c in self.terms.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        out = {}
        for key, coef in self.terms.items():
            s = coef.scale(c)
            if s:
                out[key] = s
        return OperatorEntry(self.nleaves, self.dim, self.order, out)

    def __repr__(self):
        return "OperatorEntry(%d terms)" % len(self.terms)


# ---------------------------------------------------------------------------
# block operators


class HomOperator:
    """Block matrix of operator entries between shaped free modules.

    Source and target must have the same leaf count, so entries act within a
    single variable list.  blocks maps (out_index, in_index) to a nonzero
    OperatorEntry; absent blocks are zero.
    """

    __slots__ = ("src_shape", "dst_shape", "d", "order", "blocks")

    def __init__(self, src_shape, dst_shape, d, order, blocks):
        if shape_nleaves(src_shape) != shape_nleaves(dst_shape):
            raise ValueError("source and target must share a leaf count")
        self.src_shape = src_shape
        self.dst_shape = dst_shape
        self.d = d
        self.order = order
        self.blocks = blocks

    @classmethod
    def zero(cls, src_shape, dst_shape, d, order):
        return cls(src_shape, dst_shape, d, order, {})

    @classmethod
    def from_blocks(cls, src_shape, dst_shape, d, order, pairs):
        acc = {}
        for key, entry in pairs:
            if not entry:
                continue
            prev = acc.get(key)
            s = entry if prev is None else prev + entry
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        return cls(src_shape, dst_shape, d, order, acc)

    @property
    def src_rank(self):
        return shape_rank(self.src_shape)

    @property
    def dst_rank(self):
        return shape_rank(self.dst_shape)

    @property
    def nleaves(self):
        return shape_nleaves(self.src_shape)

    @property
    def dim(self):
        return self.nleaves * self.d

    def entry(self, i, j):
        got = self.blocks.get((i, j))
        if got is None:
            return OperatorEntry.zero(self.nleaves, self.dim, self.order)
        return got

    def is_zero(self):
        return not self.blocks

    def __bool__(self):
        return bool(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, HomOperator):
            return NotImplemented
        return (
            self.src_shape == other.src_shape
            and self.dst_shape == other.dst_shape
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.src_shape, self.dst_shape, frozenset(self.blocks)))

    def _check(self, other):
        if self.src_shape != other.src_shape or self.dst_shape != other.dst_shape:
            raise ValueError("mismatched operator shapes")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.blocks)
        for key, entry in other.blocks.items():
            prev = acc.get(key)
            s = entry if prev is None else prev + entry
            if s:
                acc[key] = s
            elif key in acc:
                del acc[key]
        return HomOperator(self.src_shape, self.dst_shape, self.d, self.order, acc)

    def __neg__(self):
        return HomOperator(
            self.src_shape, self.dst_shape, self.d, self.order,
            {k: -e for k, e in self.blocks.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        acc = {}
        for key, entry in self.blocks.items():
            s = entry.scale(c)
            if s:
                acc[key] = s
        return HomOperator(self.src_shape, self.dst_shape, self.d, self.order, acc)

    def __repr__(self):
        return "HomOperator(%r <- %r, %d blocks)" % (
            self.dst_shape, self.src_shape, len(self.blocks)
        )


def rebracket(op, src_shape, dst_shape):
    """Reinterpret an operator between rebracketed shapes.

    The flat component order is invariant under re-association of the shape
    tree, so only the metadata changes; leaf lists must match exactly.
    """
    if shape_leaves(src_shape) != shape_leaves(op.src_shape):
        raise ValueError("source leaves differ under rebracketing")
    if shape_leaves(dst_shape) != shape_leaves(op.dst_shape):
        raise ValueError("target leaves differ under rebracketing")
    return HomOperator(src_shape, dst_shape, op.d, op.order, op.blocks)


# ---------------------------------------------------------------------------
# context


class HomContext:
    """An algebra object together with caches for the operator calculus."""

    def __init__(self, algebra):
        self.alg = algebra
        self.h = algebra.hopf_f
        self.rep = algebra.rep
        self.lie = self.h.lie
        self.d = algebra.rep.dim
        self.order = self.h.order
        self._shifted = {}
        self._splits = {}
        self._elems = {}
        self._act_ops = {}

    def shifted(self, nleaves, leaf):
        key = (nleaves, leaf)
        got = self._shifted.get(key)
        if got is None:
            got = self.rep.shifted(nleaves * self.d, leaf * self.d)
            self._shifted[key] = got
        return got

    def cached(self, key, build):
        got = self._elems.get(key)
        if got is None:
            got = build()
            self._elems[key] = got
        return got

    def unit_poly(self, nleaves):
        return PolyFunction.const(GR_ONE, nleaves * self.d, self.order)

    def split_word(self, word, shape):
        """Split a PBW word along the shape tree by the iterated coproduct."""
        key = (word, shape)
        got = self._splits.get(key)
        if got is None:
            if isinstance(shape, int):
                got = word_element(self.lie, word, self.order)
            else:
                left, right = shape
                nl, nr = shape_nleaves(left), shape_nleaves(right)
                acc = {}
                for (wl, wr), c in self.h.delta_word(word).terms.items():
                    sl = self.split_word(wl, left)
                    sr = self.split_word(wr, right)
                    for kl, cl in sl.terms.items():
                        for kr, cr in sr.terms.items():
                            s = c * cl * cr
                            if not s:
                                continue
                            nk = kl + kr
                            prev = acc.get(nk)
                            s2 = s if prev is None else prev + s
                            if s2:
                                acc[nk] = s2
                            elif nk in acc:
                                del acc[nk]
                got = TensorElement(self.lie, nl + nr, self.order, acc)
            self._splits[key] = got
        return got

    def split(self, x, shape):
        """Split a 1-leg element (or word) along the shape tree."""
        if isinstance(x, tuple):
            return self.split_word(x, shape)
        k = shape_nleaves(shape)
        acc = TensorElement.zero(self.lie, k, self.order)
        for (word,), c in x.terms.items():
            acc = acc + self.split_word(word, shape).scale(c)
        return acc


def hom_context(algebra):
    return HomContext(algebra)


def base_context(ctx_or_preset):
    """The context for the same coordinates and rep with the untwisted Hopf data."""
    from .polyfun import AlgebraObject

    alg = ctx_or_preset.alg if isinstance(ctx_or_preset, HomContext) else ctx_or_preset
    if alg.twist is None:
        return HomContext(alg)
    return HomContext(AlgebraObject(alg.coords, alg.rep, alg.hopf, None))


# ---------------------------------------------------------------------------
# actions


def act_vec(ctx, x, v):
    """Module action of a 1-leg element (or word) on a shaped vector."""
    split = ctx.split(x, v.shape)
    k = shape_nleaves(v.shape)
    out = [PolyFunction.zero(v.dim, v.order) for _ in range(v.rank)]
    for key, c in split.terms.items():
        for i, p in enumerate(v.entries):
            if not p:
                continue
            q = p
            for leaf in range(k):
                w = key[leaf]
                if w:
                    q = ctx.shifted(k, leaf).apply_word(w, q)
                    if not q:
                        break
            if q:
                out[i] = out[i] + q.scale(c)
    return FreeBimoduleVec(v.shape, v.d, v.order, out)


def act_op(ctx, shape, x):
    """The diagonal operator for the module action of a 1-leg element."""
    if isinstance(x, tuple):
        cache_key = (x, shape)
    else:
        cache_key = None
    if cache_key is not None:
        got = ctx._act_ops.get(cache_key)
        if got is not None:
            return got
    split = ctx.split(x, shape)
    k = shape_nleaves(shape)
    dim = k * ctx.d
    entry = OperatorEntry.from_terms(
        k, dim, ctx.order,
        ((key, PolyFunction.const(GR_ONE, dim, ctx.order).scale(c))
         for key, c in split.terms.items()),
    )
    rank = shape_rank(shape)
    blocks = {}
    if entry:
        for i in range(rank):
            blocks[(i, i)] = entry
    op = HomOperator(shape, shape, ctx.d, ctx.order, blocks)
    if cache_key is not None:
        ctx._act_ops[cache_key] = op
    return op


def identity_op(ctx, shape):
    return act_op(ctx, shape, ())


# ---------------------------------------------------------------------------
# entry calculus


def _word_on_product(rep, word, c):
    """Expand w |> (c * u) by the Leibniz rule of the derivation action.

    Returns a dict mapping the subword still acting on u to the polynomial
    obtained by letting the complementary factors differentiate c.
    """
    out = {(): c}
    for g in reversed(word):
        nxt = {}
        for sub, cc in out.items():
            dc = rep.apply_gen(g, cc)
            if dc:
                prev = nxt.get(sub)
                s = dc if prev is None else prev + dc
                if s:
                    nxt[sub] = s
                elif sub in nxt:
                    del nxt[sub]
            kept = (g,) + sub
            prev = nxt.get(kept)
            s = cc if prev is None else prev + cc
            if s:
                nxt[kept] = s
            elif kept in nxt:
                del nxt[kept]
        out = nxt
    return out


def _entry_premul(ctx, entry, c):
    """Terms of  u |-> entry(c * u)  as a key -> coefficient dict."""
    k = entry.nleaves
    if c.degree() <= 0:
        out = {}
        for key, coef in entry.terms.items():
            s = coef * c
            if s:
                out[key] = s
        return out
    out = {}
    for key, coef in entry.terms.items():
        cur = {(): c}
        for leaf in range(k):
            w = key[leaf]
            if not w:
                cur = {pk + ((),): cc for pk, cc in cur.items()}
                continue
            rep = ctx.shifted(k, leaf)
            nxt = {}
            for pk, cc in cur.items():
                for sub, cc2 in _word_on_product(rep, w, cc).items():
                    nk = pk + (sub,)
                    prev = nxt.get(nk)
                    s = cc2 if prev is None else prev + cc2
                    if s:
                        nxt[nk] = s
                    elif nk in nxt:
                        del nxt[nk]
            cur = nxt
        for nk, cc in cur.items():
            s = coef * cc
            if not s:
                continue
            prev = out.get(nk)
            s2 = s if prev is None else prev + s
            if s2:
                out[nk] = s2
            elif nk in out:
                del out[nk]
    return out


def entry_apply(ctx, entry, p):
    k = entry.nleaves
    acc = PolyFunction.zero(entry.dim, entry.order)
    for key, coef in entry.terms.items():
        q = p
        for leaf in range(k):
            w = key[leaf]
            if w:
                q = ctx.shifted(k, leaf).apply_word(w, q)
                if not q:
                    break
        if q:
            acc = acc + coef * q
    return acc


def entry_compose(ctx, ea, eb):
    """The entry of the composite  u |-> ea(eb(u))."""
    k = ea.nleaves
    no = ctx.lie.normal_order_word
    abelian = ctx.lie.is_abelian
    out = {}
    for key_b, coef_b in eb.terms.items():
        mid = _entry_premul(ctx, ea, coef_b)
        for key_m, coef_m in mid.items():
            partial = [((), GR_ONE)]
            ok = True
            for leaf in range(k):
                w = key_m[leaf] + key_b[leaf]
                if not w:
                    partial = [(pk + ((),), pc) for pk, pc in partial]
                    continue
                if abelian:
                    w2 = tuple(sorted(w))
                    partial = [(pk + (w2,), pc) for pk, pc in partial]
                    continue
                if _sorted_word(w):
                    partial = [(pk + (w,), pc) for pk, pc in partial]
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
                s = coef_m if pc is GR_ONE else coef_m.scale(pc)
                if not s:
                    continue
                prev = out.get(nk)
                s2 = s if prev is None else prev + s
                if s2:
                    out[nk] = s2
                elif nk in out:
                    del out[nk]
    return OperatorEntry(k, ea.dim, ea.order, out)


def _sorted_word(w):
    for t in range(len(w) - 1):
        if w[t] > w[t + 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# operator algebra


def op_apply(ctx, op, v):
    if v.shape != op.src_shape:
        raise ValueError("vector shape does not match the operator source")
    out = [PolyFunction.zero(op.dim, op.order) for _ in range(op.dst_rank)]
    for (i, j), entry in op.blocks.items():
        p = v.entries[j]
        if not p:
            continue
        q = entry_apply(ctx, entry, p)
        if q:
            out[i] = out[i] + q
    return FreeBimoduleVec(op.dst_shape, op.d, op.order, out)


def compose_ops(ctx, a, b):
    """The operator a o b (apply b first)."""
    if b.dst_shape != a.src_shape:
        raise ValueError("inner shapes do not match in composition")
    by_j = {}
    for (j, kk), entry in b.blocks.items():
        by_j.setdefault(j, []).append((kk, entry))
    acc = {}
    for (i, j), ea in a.blocks.items():
        cols = by_j.get(j)
        if not cols:
            continue
        for kk, eb in cols:
            e = entry_compose(ctx, ea, eb)
            if not e:
                continue
            prev = acc.get((i, kk))
            s = e if prev is None else prev + e
            if s:
                acc[(i, kk)] = s
            elif (i, kk) in acc:
                del acc[(i, kk)]
    return HomOperator(b.src_shape, a.dst_shape, a.d, a.order, acc)


def tensor_box(ctx, p, q):
    """The operator p (x) q on the tensor-product carriers.

    Coefficients embed into disjoint variable blocks and keys concatenate;
    indices combine row-major with the second factor fastest.
    """
    kp, kq = p.nleaves, q.nleaves
    k = kp + kq
    dim = k * ctx.d
    offset = kp * ctx.d
    rq_dst, rq_src = q.dst_rank, q.src_rank
    acc = {}
    for (ip, jp), ep in p.blocks.items():
        for (iq, jq), eq in q.blocks.items():
            terms = []
            for key_p, coef_p in ep.terms.items():
                cp = coef_p.embed(dim, 0)
                for key_q, coef_q in eq.terms.items():
                    coef = cp * coef_q.embed(dim, offset)
                    if coef:
                        terms.append((key_p + key_q, coef))
            if not terms:
                continue
            entry = OperatorEntry.from_terms(k, dim, ctx.order, terms)
            if entry:
                acc[(ip * rq_dst + iq, jp * rq_src + jq)] = entry
    return HomOperator(
        (p.src_shape, q.src_shape), (p.dst_shape, q.dst_shape),
        ctx.d, ctx.order, acc,
    )


class OpAccum:
    """Accumulate a sum of operators without quadratic re-merging."""

    def __init__(self, ctx, src_shape, dst_shape):
        self.ctx = ctx
        self.src_shape = src_shape
        self.dst_shape = dst_shape
        self.blocks = {}

    def add(self, op, c):
        if not c:
            return
        for pos, entry in op.blocks.items():
            slot = self.blocks.setdefault(pos, {})
            for key, coef in entry.terms.items():
                add = coef.scale(c)
                prev = slot.get(key)
                tot = add if prev is None else prev + add
                if tot:
                    slot[key] = tot
                elif key in slot:
                    del slot[key]

    def result(self):
        k = shape_nleaves(self.src_shape)
        dim = k * self.ctx.d
        blocks = {}
        for pos, slot in self.blocks.items():
            entry = OperatorEntry.from_terms(k, dim, self.ctx.order,
                                             slot.items())
            if entry:
                blocks[pos] = entry
        return HomOperator(self.src_shape, self.dst_shape, self.ctx.d,
                           self.ctx.order, blocks)


def sandwich_sum_op(ctx, elem2, op):
    """Sum of  c * act(w_post) o op o act(w_pre)  over a 2-leg element."""
    acc = OpAccum(ctx, op.src_shape, op.dst_shape)
    for (w_post, w_pre), c in elem2.terms.items():
        inner = compose_ops(ctx, op, act_op(ctx, op.src_shape, w_pre))
        outer = compose_ops(ctx, act_op(ctx, op.dst_shape, w_post), inner)
        acc.add(outer, c)
    return acc.result()


def sandwich_sum_apply(ctx, elem2, op_fun, dst_shape, v):
    """Apply the same sandwich sum to one vector, `op_fun` a callable."""
    acc = FreeBimoduleVec.zero(dst_shape, ctx.d, ctx.order)
    for (w_post, w_pre), c in elem2.terms.items():
        u = act_vec(ctx, w_pre, v) if w_pre else v
        u = op_fun(u)
        if not u:
            continue
        u = act_vec(ctx, w_post, u) if w_post else u
        acc = acc + u.scale(c)
    return acc


# ---------------------------------------------------------------------------
# the adjoint action and the internal-hom structure maps


def _adjoint_elem(ctx, x):
    """The 2-leg element sum h_(1) (x) S(h_(2)) for a word or 1-leg element."""
    if isinstance(x, tuple):
        key = ("adj", x)
        return ctx.cached(
            key,
            lambda: ctx.h.antipode_on_leg(ctx.h.delta_word(x), 1),
        )
    return ctx.h.antipode_on_leg(ctx.h.delta(x), 1)


def adjoint_act(ctx, x, op):
    """The Hopf adjoint action of a word or 1-leg element on an operator."""
    return sandwich_sum_op(ctx, _adjoint_elem(ctx, x), op)


def ev_sandwich(ctx):
    """phi^1 (x) S(phi^2) alpha phi^3, the evaluation correction."""
    def build():
        h = ctx.h
        x = h.antipode_on_leg(h.phi, 1)
        x = nc_mul(x, leg_embed(h.alpha, (2,), 3))
        return fuse_legs(x, ((0,), (1, 2)))
    return ctx.cached("ev2", build)


def ev_op(ctx, op):
    """The evaluation of an internal hom as a plain operator."""
    return sandwich_sum_op(ctx, ev_sandwich(ctx), op)


def internal_ev(ctx, op, v):
    return sandwich_sum_apply(
        ctx, ev_sandwich(ctx), lambda u: op_apply(ctx, op, u),
        op.dst_shape, v,
    )


def comp_sandwich(ctx):
    """The 3-leg correction in the internal composition.

    Legs multiply as post o L o mid o L' o pre with
    post = phi~1 (phi-inv 1)_(1),
    mid  = S(phi~2 (phi-inv 1)_(2)) alpha phi~3 (phi-inv 2),
    pre  = S(phi-inv 3).
    """
    def build():
        h = ctx.h
        x = h.delta_on_leg(h.phi_inv, 0)
        x = leg_embed(x, (1, 2, 5, 6), 6)
        x = nc_mul(leg_embed(h.phi, (1, 2, 4), 6), x)
        x = nc_mul(x, leg_embed(h.alpha, (3,), 6))
        x = h.antipode_on_leg(x, 1)
        x = h.antipode_on_leg(x, 5)
        return fuse_legs(x, ((0,), (1, 2, 3, 4), (5,)))
    return ctx.cached("comp3", build)


def internal_comp(ctx, op_a, op_b):
    """The internal composition of internal homs (op_a after op_b)."""
    if op_b.dst_shape != op_a.src_shape:
        raise ValueError("inner shapes do not match in internal composition")
    e3 = comp_sandwich(ctx)
    if e3.is_unit():
        return compose_ops(ctx, op_a, op_b)
    acc = HomOperator.zero(op_b.src_shape, op_a.dst_shape, ctx.d, ctx.order)
    for (w_post, w_mid, w_pre), c in e3.terms.items():
        t = compose_ops(ctx, op_b, act_op(ctx, op_b.src_shape, w_pre))
        t = compose_ops(ctx, act_op(ctx, op_a.src_shape, w_mid), t)
        t = compose_ops(ctx, op_a, t)
        t = compose_ops(ctx, act_op(ctx, op_a.dst_shape, w_post), t)
        acc = acc + t.scale(c)
    return acc


def internal_comp_apply(ctx, fun_a, fun_b, shapes, v):
    """Apply the internal composition of two callables to one vector.

    shapes = (src, mid, dst) gives the carriers of fun_b and fun_a.
    """
    src_shape, mid_shape, dst_shape = shapes
    e3 = comp_sandwich(ctx)
    acc = FreeBimoduleVec.zero(dst_shape, ctx.d, ctx.order)
    for (w_post, w_mid, w_pre), c in e3.terms.items():
        u = act_vec(ctx, w_pre, v) if w_pre else v
        u = fun_b(u)
        if not u:
            continue
        u = act_vec(ctx, w_mid, u) if w_mid else u
        u = fun_a(u)
        if not u:
            continue
        u = act_vec(ctx, w_post, u) if w_post else u
        acc = acc + u.scale(c)
    return acc


def one_end(ctx, shape):
    """The unit of the internal endomorphisms: the action of beta."""
    beta_word_sum = ctx.h.beta
    return act_op(ctx, shape, beta_word_sum)


def is_equivariant(ctx, op):
    """Whether the operator commutes with every generator action."""
    for g in range(ctx.lie.ngen):
        word = (g,)
        left = compose_ops(ctx, act_op(ctx, op.dst_shape, word), op)
        right = compose_ops(ctx, op, act_op(ctx, op.src_shape, word))
        if left != right:
            return False
    return True


def is_invariant(ctx, op):
    """Whether the adjoint action of every generator kills the operator."""
    for g in range(ctx.lie.ngen):
        acted = adjoint_act(ctx, (g,), op)
        eps = ctx.h.epsilon_gen.get(g)
        expect = op.scale(eps) if eps else HomOperator.zero(
            op.src_shape, op.dst_shape, ctx.d, ctx.order
        )
        if acted != expect:
            return False
    return True


def theta(ctx, op):
    """Embed an equivariant operator as an invariant internal hom."""
    if not is_equivariant(ctx, op):
        raise ValueError("theta expects an equivariant operator")
    return compose_ops(ctx, act_op(ctx, op.dst_shape, ctx.h.beta), op)


def theta_inv(ctx, op):
    """Recover the equivariant operator from an invariant internal hom."""
    if not is_invariant(ctx, op):
        raise ValueError("theta_inv expects an invariant internal hom")
    return sandwich_sum_op(ctx, ev_sandwich(ctx), op)


# ---------------------------------------------------------------------------
# the bimodule structure


def _act_coeff(ctx, word, a):
    return ctx.rep.apply_word(word, a) if word else a


def left_mult_op(ctx, shape, a):
    """The operator of left multiplication by a in the shaped bimodule."""
    if isinstance(shape, int):
        tw = ctx.alg.twist
        dim, order = ctx.d, ctx.order
        if tw is None:
            entry = OperatorEntry.from_terms(1, dim, order, [(((),), a)])
        else:
            pairs = []
            for (w1, w2), c in tw.inverse.terms.items():
                coef = _act_coeff(ctx, w1, a).scale(c)
                if coef:
                    pairs.append(((w2,), coef))
            entry = OperatorEntry.from_terms(1, dim, order, pairs)
        blocks = {}
        if entry:
            for i in range(shape):
                blocks[(i, i)] = entry
        return HomOperator(shape, shape, ctx.d, ctx.order, blocks)
    left, right = shape
    acc = None
    for (f1, f2, f3), c in ctx.h.phi_inv.terms.items():
        inner = compose_ops(
            ctx,
            left_mult_op(ctx, left, _act_coeff(ctx, f1, a)),
            act_op(ctx, left, f2),
        )
        t = tensor_box(ctx, inner, act_op(ctx, right, f3)).scale(c)
        acc = t if acc is None else acc + t
    return acc


def right_mult_op(ctx, shape, a):
    """The operator of right multiplication by a in the shaped bimodule."""
    if isinstance(shape, int):
        dim, order = ctx.d, ctx.order
        tw = ctx.alg.twist
        if tw is None:
            entry = OperatorEntry.from_terms(1, dim, order, [(((),), a)])
        else:
            pairs = []
            for (w1, w2), c in tw.inverse.terms.items():
                coef = _act_coeff(ctx, w2, a).scale(c)
                if coef:
                    pairs.append(((w1,), coef))
            entry = OperatorEntry.from_terms(1, dim, order, pairs)
        blocks = {}
        if entry:
            for i in range(shape):
                blocks[(i, i)] = entry
        return HomOperator(shape, shape, ctx.d, ctx.order, blocks)
    left, right = shape
    acc = None
    for (p1, p2, p3), c in ctx.h.phi.terms.items():
        inner = compose_ops(
            ctx,
            right_mult_op(ctx, right, _act_coeff(ctx, p3, a)),
            act_op(ctx, right, p2),
        )
        t = tensor_box(ctx, act_op(ctx, left, p1), inner).scale(c)
        acc = t if acc is None else acc + t
    return acc


def left_mult_apply(ctx, a, v):
    return op_apply(ctx, left_mult_op(ctx, v.shape, a), v)


def right_mult_apply(ctx, a, v):
    return op_apply(ctx, right_mult_op(ctx, v.shape, a), v)


def hatl_sandwich(ctx):
    """phi-inv 1 (x) phi-inv 2 beta S(phi-inv 3)."""
    def build():
        h = ctx.h
        x = h.antipode_on_leg(h.phi_inv, 2)
        x = leg_embed(x, (1, 2, 4), 4)
        x = nc_mul(x, leg_embed(h.beta, (3,), 4))
        return fuse_legs(x, ((0,), (1, 2, 3)))
    return ctx.cached("hatl2", build)


def hat_l(ctx, shape, a):
    """Left multiplication as an internal endomorphism of the bimodule."""
    acc = None
    for (w1, w2), c in hatl_sandwich(ctx).terms.items():
        coef = _act_coeff(ctx, w1, a)
        if not coef:
            continue
        t = compose_ops(
            ctx, left_mult_op(ctx, shape, coef), act_op(ctx, shape, w2)
        ).scale(c)
        acc = t if acc is None else acc + t
    if acc is None:
        acc = HomOperator.zero(shape, shape, ctx.d, ctx.order)
    return acc


def hom_bimodule_act(ctx, side, a, op):
    """The A-bimodule structure of the internal hom: a . L or L . a."""
    if side == "left":
        return internal_comp(ctx, hat_l(ctx, op.dst_shape, a), op)
    if side == "right":
        return internal_comp(ctx, op, hat_l(ctx, op.src_shape, a))
    raise ValueError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# balanced tensor product and braiding


def _require_braided_commutative(ctx):
    def check():
        r = ctx.h.r_matrix
        if r is None:
            return False
        coords = [ctx.alg.coordinate(mu) for mu in range(ctx.d)]
        pairs = [(x, y) for x in coords for y in coords]
        pairs.append((coords[0] * coords[0], coords[-1]))
        for a, b in pairs:
            lhs = ctx.alg.star(a, b)
            rhs = PolyFunction.zero(ctx.d, ctx.order)
            for (w1, w2), c in r.terms.items():
                rb = ctx.rep.apply_word(w2, b) if w2 else b
                if not rb:
                    continue
                ra = ctx.rep.apply_word(w1, a) if w1 else a
                if not ra:
                    continue
                rhs = rhs + ctx.alg.star(rb, ra).scale(c)
            if lhs != rhs:
                return False
        return True

    if not ctx.cached("braided-commutative", check):
        raise ValueError("tensor_over_A requires a braided-commutative algebra")


def tensor_over_A(ctx, v, w):
    """The balanced tensor product of two rank vectors, componentwise.

    Components are (v tensor_A w)_(i,j) = v_i * w_j in row-major order; the
    algebra must be braided commutative for this to be well defined.
    """
    if not isinstance(v.shape, int) or not isinstance(w.shape, int):
        raise ValueError("tensor_over_A expects single-leaf vectors")
    _require_braided_commutative(ctx)
    out = []
    for vi in v.entries:
        for wj in w.entries:
            out.append(ctx.alg.star(vi, wj))
    return FreeBimoduleVec(v.shape * w.shape, ctx.d, ctx.order, out)


def braiding_tau(ctx, v, w):
    """The braiding on the balanced tensor product, componentwise.

    tau(v tensor_A w) = (R^2 |> w) tensor_A (R^1 |> v); for a triangular
    structure this lands on the transposed components.
    """
    if not isinstance(v.shape, int) or not isinstance(w.shape, int):
        raise ValueError("braiding_tau expects single-leaf vectors")
    _require_braided_commutative(ctx)
    r = ctx.h.r_matrix
    rank = w.shape * v.shape
    out = [PolyFunction.zero(ctx.d, ctx.order) for _ in range(rank)]
    for (w1, w2), c in r.terms.items():
        for j, wj in enumerate(w.entries):
            rw = ctx.rep.apply_word(w2, wj) if w2 else wj
            if not rw:
                continue
            for i, vi in enumerate(v.entries):
                rv = ctx.rep.apply_word(w1, vi) if w1 else vi
                if not rv:
                    continue
                out[j * v.shape + i] = out[j * v.shape + i] + ctx.alg.star(rw, rv).scale(c)
    return FreeBimoduleVec(w.shape * v.shape, ctx.d, ctx.order, out)


def tau_block(ctx, v):
    """The braiding on a two-leaf carrier, swapping leaves and variables."""
    if isinstance(v.shape, int):
        raise ValueError("tau_block expects a two-leaf shape")
    left, right = v.shape
    if not (isinstance(left, int) and isinstance(right, int)):
        raise ValueError("tau_block expects a node of two leaves")
    r = ctx.h.r_matrix
    swap = list(range(ctx.d, 2 * ctx.d)) + list(range(0, ctx.d))
    out = [PolyFunction.zero(2 * ctx.d, ctx.order) for _ in range(v.rank)]
    rep0 = ctx.shifted(2, 0)
    rep1 = ctx.shifted(2, 1)
    for (w1, w2), c in r.terms.items():
        for i in range(left):
            for j in range(right):
                p = v.entries[i * right + j]
                if not p:
                    continue
                q = rep0.apply_word(w1, p) if w1 else p
                if not q:
                    continue
                q = rep1.apply_word(w2, q) if w2 else q
                if not q:
                    continue
                q = q.permute_vars(swap)
                out[j * left + i] = out[j * left + i] + q.scale(c)
    return FreeBimoduleVec((right, left), ctx.d, ctx.order, out)


# ---------------------------------------------------------------------------
# right-linearity criterion


def is_right_A_linear(ctx, op, degree_bound=3):
    """Report whether an operator is right A-linear in the internal sense.

    Checks ev(L (x) (v . a)) against the associator-corrected right action of
    a on the evaluation, over module basis monomials and coordinate monomials
    up to the degree bound.
    """
    def residual():
        src_rank = op.src_rank
        if not isinstance(op.src_shape, int) or not isinstance(op.dst_shape, int):
            raise ValueError("right-linearity check expects rank vectors")
        monos = all_monomials(ctx.d, degree_bound, ctx.order, include_const=False)
        phi_inv = ctx.h.phi_inv
        for j in range(src_rank):
            for pv in [ctx.alg.one()] + monos[: ctx.d]:
                base = FreeBimoduleVec.basis(op.src_shape, ctx.d, ctx.order, j)
                v = FreeBimoduleVec(
                    op.src_shape, ctx.d, ctx.order,
                    tuple(p * pv for p in base.entries),
                )
                for a in monos:
                    lhs = internal_ev(ctx, op, right_mult_apply(ctx, a, v))
                    rhs = FreeBimoduleVec.zero(op.dst_shape, ctx.d, ctx.order)
                    for (f1, f2, f3), c in phi_inv.terms.items():
                        fa = _act_coeff(ctx, f3, a)
                        if not fa:
                            continue
                        acted = adjoint_act(ctx, f1, op) if f1 else op
                        u = act_vec(ctx, f2, v) if f2 else v
                        e = internal_ev(ctx, acted, u)
                        if not e:
                            continue
                        rhs = rhs + right_mult_apply(ctx, fa, e).scale(c)
                    diff = lhs - rhs
                    if diff:
                        return diff
        return None

    return run_identity(
        "right-A-linearity", "hom.right-linearity-criterion", residual
    )


# ---------------------------------------------------------------------------
# twist comparison


def gamma_sandwich(ctx, twist, inverse=False):
    """F-inv 1 (x) S(F-inv 2), or the F legs for the inverse direction."""
    f = twist.f if inverse else twist.inverse
    return ctx.h.antipode_on_leg(f, 1)


def gamma_map(ctx_base, twist, op):
    """Identify a twisted internal hom with an untwisted one.

    ctx_base carries the untwisted structure; the sandwich splits along the
    shape with the untwisted coproduct.
    """
    return sandwich_sum_op(ctx_base, gamma_sandwich(ctx_base, twist), op)


def gamma_inv_map(ctx_base, twist, op):
    return sandwich_sum_op(
        ctx_base, gamma_sandwich(ctx_base, twist, inverse=True), op
    )
