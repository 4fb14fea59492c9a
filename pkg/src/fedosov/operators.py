"""Graded operators on the Weyl-form algebra: delta, delta*, delta~, tau, T, epsilon, nabla.

All of them act term-by-term on the canonical h-series; they commute with
symmetrization, so their coordinate formulas on the symmetric
representative are the operators themselves.
"""

from __future__ import annotations

from fractions import Fraction

from .element import WeylFormElement, insert_form_left
from .poly import RationalPoly

__all__ = [
    "delta",
    "delta_star",
    "delta_tilde",
    "tau",
    "T",
    "epsilon",
    "nabla",
    "exterior_d",
]


class _Acc:
    """Term accumulator that drops cancelled entries."""

    __slots__ = ("terms",)

    def __init__(self):
        self.terms = {}

    def add(self, key, c):
        prev = self.terms.get(key)
        if prev is not None:
            c = prev + c
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)


def _dec(mu, b):
    return mu[:b] + (mu[b] - 1,) + mu[b + 1:]


def _inc(mu, k):
    return mu[:k] + (mu[k] + 1,) + mu[k + 1:]


def delta(st, e):
    """``delta(s(y) dx_nu) = sum_b ds/dy_b * flat(d_b) ^ dx_nu``.

    Lowers fiber degree by one, raises form degree by one; validity drops by one.
    """
    nv = e.nvars
    acc = _Acc()
    for (m, mu, nu), c in e.terms.items():
        for b in range(nv):
            if not mu[b]:
                continue
            nmu = _dec(mu, b)
            cb = c.scale(mu[b])
            for j in range(nv):
                fl = st.flat_matrix[b][j]
                if not fl:
                    continue
                r = insert_form_left(j + 1, nu)
                if r is None:
                    continue
                s, nnu = r
                w = cb * fl
                acc.add((m, nmu, nnu), w if s > 0 else -w)
    return WeylFormElement._raw(acc.terms, nv, e.validity - 1)


def delta_star(st, e):
    """``delta*(s dx_i1..dx_iq) = sum_t (-1)^(t-1) sharp(dx_it) s dx_i1..^..dx_iq``.

    Raises fiber degree by one and lowers form degree by one.
    """
    nv = e.nvars
    acc = _Acc()
    for (m, mu, nu), c in e.terms.items():
        for t, i in enumerate(nu):
            rest = nu[:t] + nu[t + 1:]
            ct = c if t % 2 == 0 else -c
            for k in range(nv):
                sh = st.sharp_matrix[i - 1][k]
                if sh:
                    acc.add((m, _inc(mu, k), rest), ct * sh)
    return WeylFormElement._raw(acc.terms, nv, e.validity + 1)


def delta_tilde(st, e):
    """Normalized homotopy: ``delta*/(p+q)`` on each (p, q) component, zero on (0, 0)."""
    nv = e.nvars
    acc = _Acc()
    for (m, mu, nu), c in e.terms.items():
        p, q = sum(mu), len(nu)
        if q == 0:
            continue
        w = Fraction(1, p + q)
        for t, i in enumerate(nu):
            rest = nu[:t] + nu[t + 1:]
            ct = c.scale(w if t % 2 == 0 else -w)
            for k in range(nv):
                sh = st.sharp_matrix[i - 1][k]
                if sh:
                    acc.add((m, _inc(mu, k), rest), ct * sh)
    return WeylFormElement._raw(acc.terms, nv, e.validity + 1)


def tau(e):
    """Projection onto A[[h]]: the fiber- and form-free part, every power of h."""
    return e.select(lambda p, q, m: p == 0 and q == 0)


def T(e):
    """Projection onto A[[h]] (x) Omega: the fiber-free part."""
    return e.select(lambda p, q, m: p == 0)


def epsilon(e):
    """Augmentation: the coefficient of ``h^0 y^0`` with no forms."""
    return e.coefficient(0, (0,) * e.nvars, ())


def nabla(conn, e):
    """Covariant exterior derivative.

    ``nabla e = sum_a dx_a ^ (d e/d x_a + sum_{b,c} Gamma^c_{ab} y_c d e/d y_b)``.
    The new dx_a is placed to the left of the existing form monomial, which
    makes ``nabla`` a left graded derivation of weight one.
    """
    nv = e.nvars
    U = conn.gamma_upper
    acc = _Acc()
    for (m, mu, nu), c in e.terms.items():
        for a in range(nv):
            r = insert_form_left(a + 1, nu)
            if r is None:
                continue
            s, nnu = r
            dc = c.diff(a + 1)
            if dc:
                acc.add((m, mu, nnu), dc if s > 0 else -dc)
            for b in range(nv):
                if not mu[b]:
                    continue
                base = _dec(mu, b)
                cb = c.scale(mu[b] if s > 0 else -mu[b])
                for k in range(nv):
                    g = U[a][b][k]
                    if g:
                        acc.add((m, _inc(base, k), nnu), cb * g)
    return WeylFormElement._raw(acc.terms, nv, e.validity)


def exterior_d(e):
    """de Rham differential on A[[h]] (x) Omega, extended h-linearly."""
    nv = e.nvars
    acc = _Acc()
    for (m, mu, nu), c in e.terms.items():
        if any(mu):
            raise ValueError("exterior_d takes fiber-free elements")
        for a in range(nv):
            r = insert_form_left(a + 1, nu)
            if r is None:
                continue
            s, nnu = r
            dc = c.diff(a + 1)
            if dc:
                acc.add((m, mu, nnu), dc if s > 0 else -dc)
    return WeylFormElement._raw(acc.terms, nv, e.validity)
