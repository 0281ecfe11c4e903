"""Finite-dimensional Lie algebra presentations and PBW normal ordering.

A monomial in the universal envelope is stored as a tuple of generator
indices; it is *normal ordered* when the tuple is nondecreasing.  The
presentations used here are admissibly ordered: every bracket [g_i, g_j]
(i < j) is supported on generators strictly below min(i, j), which makes
the rewriting below terminate and keeps all structure constants exact.
"""

from .scalars import GaussianRational, GR_ZERO, GR_ONE


class LiePresentation:
    """Generators plus structure constants [g_i, g_j] = sum_k c^k_{ij} g_k.

    brackets maps a pair (i, j) with i < j to {k: c} holding the nonzero
    structure constants.  Pairs not listed commute.
    """

    def __init__(self, generators, brackets=None):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        self.brackets = {}
        for (i, j), comps in (brackets or {}).items():
            if not (0 <= i < j < len(self.generators)):
                raise ValueError("bracket pair (%s, %s) out of range or not i<j" % (i, j))
            comps = {k: _gr(c) for k, c in comps.items() if _gr(c)}
            if not comps:
                continue
            for k in comps:
                if not (0 <= k < len(self.generators)):
                    raise ValueError("bracket target %s out of range" % k)
                if k >= min(i, j):
                    raise ValueError(
                        "ordering not admissible: [%s, %s] involves %s"
                        % (self.generators[i], self.generators[j], self.generators[k])
                    )
            self.brackets[(i, j)] = comps
        self.is_abelian = not self.brackets
        self._no_cache = {}

    @property
    def ngen(self):
        return len(self.generators)

    def index(self, name):
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError("unknown generator %r" % (name,))

    def bracket(self, i, j):
        """[g_i, g_j] as {k: coeff}; antisymmetric in (i, j)."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        comps = self.brackets.get((j, i), {})
        return {k: -c for k, c in comps.items()}

    def check_jacobi(self):
        """Return a list of (i, j, k) triples violating the Jacobi identity."""
        bad = []
        n = self.ngen
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = {}
                    for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                        # [[g_a, g_b], g_c]
                        for m, cm in self.bracket(a, b).items():
                            for p, cp in self.bracket(m, c).items():
                                acc[p] = acc.get(p, GR_ZERO) + cm * cp
                    if any(acc.values()):
                        bad.append((i, j, k))
        return bad

    # -- normal ordering -------------------------------------------------

    def normal_order_word(self, word):
        """Rewrite a word (tuple of indices) into normal order.

        Returns {monomial: coeff} with nondecreasing monomials, using
        g_a g_b = g_b g_a + [g_a, g_b] on the first descent.  Memoized.
        """
        if self.is_abelian:
            return {tuple(sorted(word)): GR_ONE}
        cached = self._no_cache.get(word)
        if cached is not None:
            return cached
        out = self._no(tuple(word))
        self._no_cache[word] = out
        return out

    def _no(self, word):
        cached = self._no_cache.get(word)
        if cached is not None:
            return cached
        pos = -1
        for t in range(len(word) - 1):
            if word[t] > word[t + 1]:
                pos = t
                break
        if pos < 0:
            res = {word: GR_ONE}
            self._no_cache[word] = res
            return res
        a, b = word[pos], word[pos + 1]
        out = {}
        swapped = word[:pos] + (b, a) + word[pos + 2:]
        for w, c in self._no(swapped).items():
            out[w] = out.get(w, GR_ZERO) + c
        for k, ck in self.bracket(a, b).items():
            lower = word[:pos] + (k,) + word[pos + 2:]
            for w, c in self._no(lower).items():
                s = out.get(w, GR_ZERO) + c * ck
                if s:
                    out[w] = s
                elif w in out:
                    del out[w]
        self._no_cache[word] = out
        return out

    def word_str(self, word):
        if not word:
            return "1"
        return "*".join(self.generators[i] for i in word)

    def __repr__(self):
        return "LiePresentation(%s)" % (", ".join(self.generators))


def _gr(c):
    return c if isinstance(c, GaussianRational) else GaussianRational(c)
