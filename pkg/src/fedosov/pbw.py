"""Brute-force oracles: PBW straightening, symmetrization, and the flat Moyal product.

Nothing here calls into :mod:`fedosov.product`; the word calculus only uses
the defining relation ``y_b y_a = y_a y_b + h omega_ba``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product as iproduct

from sympy.utilities.iterables import multiset_permutations

from .element import WeylFormElement
from .poly import RationalPoly

__all__ = [
    "WORD_LIMIT",
    "WordSum",
    "word_sum",
    "pbw_straighten",
    "pbw_product",
    "symmetrize",
    "project",
    "moyal_flat",
]

WORD_LIMIT = 6


class WordSum(dict):
    """``{(m, word): coeff}`` with ``word`` a tuple of 1-based fiber indices."""

    def __init__(self, nvars, items=()):
        super().__init__()
        self.nvars = nvars
        for k, c in items:
            self.add(k, c)

    def add(self, key, c):
        prev = self.get(key)
        c = c if prev is None else prev + c
        if c:
            self[key] = c
        else:
            self.pop(key, None)

    def is_normal_ordered(self):
        return all(list(w) == sorted(w) for _, w in self)


def word_sum(nvars, word, coeff=1, m=0):
    if not isinstance(coeff, RationalPoly):
        coeff = RationalPoly.const(coeff, nvars)
    return WordSum(nvars, [((m, tuple(word)), coeff)])


_straighten_cache = {}


def pbw_straighten(st, word):
    """Normal-order a single word: ``{(extra_h, sorted_word): coeff}``."""
    word = tuple(word)
    cache = _straighten_cache.setdefault(id(st), (st, {}))[1]
    hit = cache.get(word)
    if hit is not None:
        return hit
    nv = st.nvars
    for i in range(len(word) - 1):
        b, a = word[i], word[i + 1]
        if b > a:
            swapped = word[:i] + (a, b) + word[i + 2:]
            out = WordSum(nv, pbw_straighten(st, swapped).items())
            w = st.omega[b - 1][a - 1]
            if w:
                for (m, ww), c in pbw_straighten(st, word[:i] + word[i + 2:]).items():
                    out.add((m + 1, ww), c * w)
            break
    else:
        out = WordSum(nv, [((0, word), RationalPoly.const(1, nv))])
    cache[word] = out
    return out


def _guard(ws):
    for _, w in ws:
        if len(w) > WORD_LIMIT:
            raise ValueError(f"word of length {len(w)} exceeds the oracle limit {WORD_LIMIT}")


def pbw_product(st, w1, w2):
    """Product of two word sums, straightened to normal order."""
    _guard(w1)
    _guard(w2)
    out = WordSum(st.nvars)
    for (m1, a), c1 in w1.items():
        for (m2, b), c2 in w2.items():
            c = c1 * c2
            for (m, w), s in pbw_straighten(st, a + b).items():
                out.add((m1 + m2 + m, w), c * s)
    return out


def _word_of(mu):
    return tuple(i for i, e in enumerate(mu, start=1) for _ in range(e))


def symmetrize(st, mu, coeff=1, m=0):
    """``coeff h^m (1/p!) sum_sigma y_sigma(1)...y_sigma(p)``, normal ordered."""
    nv = st.nvars
    word = _word_of(mu)
    if len(word) > WORD_LIMIT:
        raise ValueError(f"fiber degree {len(word)} exceeds the oracle limit {WORD_LIMIT}")
    if not isinstance(coeff, RationalPoly):
        coeff = RationalPoly.const(coeff, nv)
    perms = list(multiset_permutations(list(word))) if word else [[]]
    weight = Fraction(1, len(perms))
    out = WordSum(nv)
    for p in perms:
        for (mm, w), c in pbw_straighten(st, tuple(p)).items():
            out.add((m + mm, w), (coeff * c).scale(weight))
    return out


def symmetrize_element(st, e):
    """Word sum of a form-free :class:`WeylFormElement`."""
    out = WordSum(st.nvars)
    for (m, mu, nu), c in e.terms.items():
        if nu:
            raise ValueError("the word oracle handles form-free elements only")
        for k, v in symmetrize(st, mu, c, m).items():
            out.add(k, v)
    return out


def project(st, ws):
    """Rewrite a normal-ordered word sum as its canonical h-series.

    Peels off the longest words: their commutative image is symmetrized and
    subtracted, which leaves only shorter words times higher powers of h.
    """
    nv = st.nvars
    rest = WordSum(nv, ws.items())
    result = {}
    while rest:
        L = max(len(w) for _, w in rest)
        top = [(k, c) for k, c in rest.items() if len(k[1]) == L]
        for (m, w), c in top:
            mu = [0] * nv
            for i in w:
                mu[i - 1] += 1
            key = (m, tuple(mu), ())
            result[key] = result[key] + c if key in result else c
            for k, v in symmetrize(st, mu, c, m).items():
                rest.add(k, -v)
        if any(len(w) >= L for _, w in rest):
            raise AssertionError("projection failed to remove leading words")
    return WeylFormElement(result, nv)


def moyal_flat(st, u, v, K):
    """Closed-form Moyal product for constant P, modulo ``h^(K+1)``.

    ``sum_k (h/2)^k / k! sum P^{a1 b1}..P^{ak bk} d_a u d_b v`` over ordered
    index sequences.
    """
    if not st.is_constant:
        raise ValueError("moyal_flat needs a constant Poisson matrix")
    nv = st.nvars
    P = st.poisson
    terms = {}
    for k in range(K + 1):
        acc = RationalPoly.zero(nv)
        for seq_a in iproduct(range(nv), repeat=k):
            du = u
            for a in seq_a:
                du = du.diff(a + 1)
            if not du:
                continue
            for seq_b in iproduct(range(nv), repeat=k):
                w = Fraction(1)
                for a, b in zip(seq_a, seq_b):
                    w *= P[a][b].constant_term()
                    if not w:
                        break
                if not w:
                    continue
                dv = v
                for b in seq_b:
                    dv = dv.diff(b + 1)
                if dv:
                    acc = acc + (du * dv).scale(w)
        acc = acc.scale(Fraction(1, 2 ** k * math.factorial(k)))
        if acc:
            terms[(k, (0,) * nv, ())] = acc
    return WeylFormElement(terms, nv, 2 * K)
