"""Associative product on the h-series representation, graded commutators, 1/h."""

from __future__ import annotations

import weakref
from fractions import Fraction

from .element import WeylFormElement, form_product
from .errors import CertificationError, NotDivisibleError
from .poly import RationalPoly

__all__ = [
    "weyl_product",
    "graded_commutator",
    "div_h",
    "ad_gamma",
    "poisson_bracket_S",
    "fiber_expansion",
    "product_validity",
]

_expansion_cache = weakref.WeakKeyDictionary()


def fiber_expansion(st, alpha, beta):
    """Moyal-type expansion of ``y^alpha o y^beta`` for the form matrix of ``st``.

    Returns a list of ``(k, gamma, coeff)`` meaning ``coeff * h^k * y^gamma``,
    where ``coeff`` already includes ``(1/2)^k / k!``.
    """
    cache = _expansion_cache.setdefault(st, {})
    key = (alpha, beta)
    hit = cache.get(key)
    if hit is not None:
        return hit

    nv = st.nvars
    omega = st.omega
    out = []
    layer = {(alpha, beta): RationalPoly.const(1, nv)}
    k = 0
    while layer:
        acc = {}
        for (a_e, b_e), c in layer.items():
            g = tuple(u + v for u, v in zip(a_e, b_e))
            acc[g] = acc[g] + c if g in acc else c
        scale = Fraction(1, 2 ** k)
        for g, c in acc.items():
            if c:
                out.append((k, g, c.scale(scale)))
        k += 1
        nxt = {}
        for (a_e, b_e), c in layer.items():
            for a in range(nv):
                if not a_e[a]:
                    continue
                a_new = a_e[:a] + (a_e[a] - 1,) + a_e[a + 1:]
                for b in range(nv):
                    if not b_e[b] or not omega[a][b]:
                        continue
                    b_new = b_e[:b] + (b_e[b] - 1,) + b_e[b + 1:]
                    w = (c * omega[a][b]).scale(Fraction(a_e[a] * b_e[b], k))
                    kk = (a_new, b_new)
                    nxt[kk] = nxt[kk] + w if kk in nxt else w
        layer = {kk: v for kk, v in nxt.items() if v}
    cache[key] = out
    return out


def product_validity(e1, e2):
    """Largest W-degree through which ``e1 o e2`` is exact."""
    return min(e1.validity + e2.min_degree(), e2.validity + e1.min_degree())


def weyl_product(st, e1, e2):
    """The associative product ``e1 o e2``.

    Fiber parts multiply by the Moyal-type expansion with the form matrix,
    form parts are wedged, and x-coefficients multiply commutatively.  Pairs
    whose combined W-degree exceeds the result validity are skipped.
    """
    e1._check(e2)
    nv = e1.nvars
    validity = product_validity(e1, e2)
    out = {}
    for (m1, mu1, nu1), c1 in e1.terms.items():
        d1 = sum(mu1) + 2 * m1
        for (m2, mu2, nu2), c2 in e2.terms.items():
            if d1 + sum(mu2) + 2 * m2 > validity:
                continue
            f = form_product(nu1, nu2)
            if f is None:
                continue
            sign, nu = f
            c = c1 * c2
            if sign < 0:
                c = -c
            for k, g, w in fiber_expansion(st, mu1, mu2):
                key = (m1 + m2 + k, g, nu)
                val = c * w
                prev = out.get(key)
                if prev is not None:
                    val = prev + val
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return WeylFormElement._raw(out, nv, validity)


def _parity_split(e):
    even = e.select(lambda p, q, m: q % 2 == 0)
    odd = e.select(lambda p, q, m: q % 2 == 1)
    return even, odd


def graded_commutator(st, a, b, check=True):
    """``[a, b] = ab - (-1)^(q_a q_b) ba`` extended bilinearly.

    The result always lies in h times the algebra; with ``check`` a term
    without h raises :class:`CertificationError`.
    """
    # fiber-free terms are central and drop out; skipping them also sharpens
    # the validity bound of the products below
    a = a.select(lambda p, q, m: p > 0)
    b = b.select(lambda p, q, m: p > 0)
    a0, a1 = _parity_split(a)
    b0, b1 = _parity_split(b)
    ba = weyl_product(st, b0, a) + weyl_product(st, b1, a0) - weyl_product(st, b1, a1)
    res = weyl_product(st, a, b) - ba
    if check:
        for m, mu, nu in res.terms:
            if m == 0:
                raise CertificationError(
                    f"graded commutator has an h-free term at y^{mu} dx{nu}; product formula is broken")
    return res


def div_h(e):
    """Divide by h; every term must carry at least one power of h."""
    out = {}
    for (m, mu, nu), c in e.terms.items():
        if m == 0:
            raise NotDivisibleError(f"term with y^{mu} dx{nu} has no factor of h")
        out[(m - 1, mu, nu)] = c
    return WeylFormElement._raw(out, e.nvars, e.validity - 2)


def ad_gamma(st, gamma, e):
    """Inner derivation ``(1/h)[gamma, e]``."""
    return div_h(graded_commutator(st, gamma, e))


def poisson_bracket_S(st, f, g):
    """Bracket on the symmetric algebra: h-free part of ``(1/h)[f, g]``."""
    for e in (f, g):
        if any(m for m, _, _ in e.terms):
            raise ValueError("poisson_bracket_S takes h-free inputs")
    return div_h(graded_commutator(st, f, g)).select(lambda p, q, m: m == 0)
