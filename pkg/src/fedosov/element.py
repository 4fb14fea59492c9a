"""Canonical h-series representation of elements of the Weyl-form algebra.

An element is a finite sum of terms ``h^m * y^mu * dx_nu`` with polynomial
coefficients in x.  The fiber part ``y^mu`` stands for the *symmetrized*
product of the corresponding derivations, so the term map is exactly the
unique h-series expansion and no normalization pass is ever needed.

Every element carries a ``validity``: it is exact modulo terms of W-degree
strictly above ``validity`` (fiber degree counts 1, h counts 2).  Exact
elements have ``validity == math.inf``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .poly import RationalPoly, format_poly, parse_poly

__all__ = [
    "WeylFormElement",
    "form_product",
    "insert_form_left",
    "wedge_with_form",
    "grade_component",
]

INF = math.inf


def form_product(nu1, nu2):
    """Wedge two canonical form monomials.

    Returns ``(sign, indices)`` or ``None`` when an index repeats.
    """
    if not nu1:
        return 1, nu2
    if not nu2:
        return 1, nu1
    s1 = set(nu1)
    if any(j in s1 for j in nu2):
        return None
    inversions = 0
    for i in nu1:
        for j in nu2:
            if i > j:
                inversions += 1
    return (-1 if inversions & 1 else 1), tuple(sorted(nu1 + nu2))


def insert_form_left(a, nu):
    """``dx_a ^ dx_nu`` as ``(sign, indices)`` or ``None``."""
    if a in nu:
        return None
    k = 0
    while k < len(nu) and nu[k] < a:
        k += 1
    return (-1 if k & 1 else 1), nu[:k] + (a,) + nu[k:]


class WeylFormElement:
    """Finite h-series ``sum h^m s_m`` with ``s_m`` in symmetrized fiber (x) forms.

    ``terms`` maps ``(m, mu, nu)`` to a nonzero :class:`RationalPoly`, where
    ``mu`` is the exponent vector over y1..y2n and ``nu`` the strictly
    increasing tuple of 1-based form indices.
    """

    __slots__ = ("terms", "nvars", "validity")

    def __init__(self, terms=None, nvars=0, validity=INF):
        self.nvars = nvars
        self.validity = validity
        clean = {}
        if terms:
            for (m, mu, nu), c in terms.items():
                mu = tuple(mu)
                nu = tuple(nu)
                if len(mu) != nvars:
                    raise ValueError(f"fiber exponent {mu} does not have length {nvars}")
                if m < 0:
                    raise ValueError("negative h-powers are not stored")
                if list(nu) != sorted(set(nu)) or (nu and not 1 <= nu[0] <= nu[-1] <= nvars):
                    raise ValueError(f"form indices {nu} are not a canonical subset of 1..{nvars}")
                if not isinstance(c, RationalPoly):
                    c = RationalPoly.const(c, nvars)
                elif c.nvars != nvars:
                    raise ValueError("coefficient dimension mismatch")
                if c and sum(mu) + 2 * m <= validity:
                    key = (m, mu, nu)
                    prev = clean.get(key)
                    c = c if prev is None else prev + c
                    if c:
                        clean[key] = c
                    else:
                        del clean[key]
        self.terms = clean

    @classmethod
    def _raw(cls, terms, nvars, validity):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj.validity = validity
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nvars, validity=INF):
        return cls._raw({}, nvars, validity)

    @classmethod
    def from_poly(cls, f, nvars=None, m=0):
        if not isinstance(f, RationalPoly):
            f = RationalPoly.const(f, nvars)
        key = (m, (0,) * f.nvars, ())
        return cls._raw({key: f} if f else {}, f.nvars, INF)

    @classmethod
    def scalar(cls, c, nvars):
        return cls.from_poly(RationalPoly.const(c, nvars))

    @classmethod
    def h(cls, nvars, power=1):
        return cls._raw({(power, (0,) * nvars, ()): RationalPoly.const(1, nvars)}, nvars, INF)

    @classmethod
    def y(cls, i, nvars, power=1):
        if not 1 <= i <= nvars:
            raise ValueError(f"fiber variable y{i} out of range")
        mu = [0] * nvars
        mu[i - 1] = power
        return cls._raw({(0, tuple(mu), ()): RationalPoly.const(1, nvars)}, nvars, INF)

    @classmethod
    def x(cls, i, nvars, power=1):
        return cls.from_poly(RationalPoly.var(i, nvars, power))

    @classmethod
    def dx(cls, *indices, nvars):
        """The form monomial ``dx_i1 ^ ... ^ dx_iq`` in the given order."""
        sign, nu = 1, ()
        for i in indices:
            if not 1 <= i <= nvars:
                raise ValueError(f"form index dx{i} out of range")
            r = form_product(nu, (i,))
            if r is None:
                return cls.zero(nvars)
            s, nu = r
            sign *= s
        return cls._raw({(0, (0,) * nvars, nu): RationalPoly.const(sign, nvars)}, nvars, INF)

    @classmethod
    def monomial(cls, coeff, m, mu, nu, nvars, validity=INF):
        return cls({(m, tuple(mu), tuple(nu)): coeff}, nvars, validity)

    # -- structure -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Terms in the canonical ``(m, mu, nu)`` order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def min_degree(self):
        """Smallest W-degree present; ``validity + 1`` for a (truncated) zero."""
        if not self.terms:
            return self.validity + 1
        return min(sum(mu) + 2 * m for m, mu, _ in self.terms)

    def max_degree(self):
        if not self.terms:
            return -1
        return max(sum(mu) + 2 * m for m, mu, _ in self.terms)

    def bidegrees(self):
        """Set of ``(p, q, m)`` labels of the nonzero components."""
        return {(sum(mu), len(nu), m) for m, mu, nu in self.terms}

    def form_degrees(self):
        return {len(nu) for _, _, nu in self.terms}

    def truncate(self, validity):
        validity = min(validity, self.validity)
        terms = {k: c for k, c in self.terms.items() if sum(k[1]) + 2 * k[0] <= validity}
        return WeylFormElement._raw(terms, self.nvars, validity)

    def with_validity(self, validity):
        """Same terms, validity lowered to ``validity`` (never raised)."""
        return self.truncate(validity)

    def exact(self):
        """Declare the stored terms to be the exact value."""
        return WeylFormElement._raw(dict(self.terms), self.nvars, INF)

    def select(self, pred):
        terms = {k: c for k, c in self.terms.items() if pred(sum(k[1]), len(k[2]), k[0])}
        return WeylFormElement._raw(terms, self.nvars, self.validity)

    def component(self, p, q, m):
        return grade_component(self, p, q, m)

    def homogeneous(self, degree):
        """W-degree ``degree`` part."""
        return self.select(lambda p, q, m: p + 2 * m == degree)

    def coefficient(self, m, mu, nu=()):
        return self.terms.get((m, tuple(mu), tuple(nu)), RationalPoly.zero(self.nvars))

    # -- linear structure ------------------------------------------------

    def _check(self, other):
        if not isinstance(other, WeylFormElement):
            raise TypeError(f"expected WeylFormElement, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def _lift(self, other):
        if isinstance(other, WeylFormElement):
            self._check(other)
            return other
        if isinstance(other, RationalPoly):
            if other.nvars != self.nvars:
                raise ValueError("dimension mismatch")
            return WeylFormElement.from_poly(other)
        if isinstance(other, (int, Rational)):
            return WeylFormElement.scalar(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        validity = min(self.validity, other.validity)
        out = {}
        for src in (self, other):
            for k, c in src.terms.items():
                if sum(k[1]) + 2 * k[0] > validity:
                    continue
                prev = out.get(k)
                s = c if prev is None else prev + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return WeylFormElement._raw(out, self.nvars, validity)

    __radd__ = __add__

    def __neg__(self):
        return WeylFormElement._raw({k: -c for k, c in self.terms.items()}, self.nvars, self.validity)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        """Multiply by a rational number or by an element of A."""
        if isinstance(c, RationalPoly):
            if c.nvars != self.nvars:
                raise ValueError("dimension mismatch")
            out = {}
            for k, v in self.terms.items():
                w = v * c
                if w:
                    out[k] = w
            return WeylFormElement._raw(out, self.nvars, self.validity)
        c = Fraction(c)
        if not c:
            return WeylFormElement.zero(self.nvars, self.validity)
        return WeylFormElement._raw({k: v.scale(c) for k, v in self.terms.items()}, self.nvars, self.validity)

    def __mul__(self, c):
        if isinstance(c, (RationalPoly, int, Rational)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def times_h(self, k=1):
        out = {(m + k, mu, nu): c for (m, mu, nu), c in self.terms.items()}
        return WeylFormElement._raw(out, self.nvars, self.validity + 2 * k)

    def wedge(self, nu):
        return wedge_with_form(self, nu)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        """Equality of term maps up to the smaller of the two validities."""
        if isinstance(other, (RationalPoly, int, Rational)):
            other = self._lift(other)
        if not isinstance(other, WeylFormElement):
            return NotImplemented
        if other.nvars != self.nvars:
            return False
        v = min(self.validity, other.validity)
        return self.truncate(v).terms == other.truncate(v).terms

    __hash__ = None

    def __repr__(self):
        v = "inf" if self.validity == INF else self.validity
        return f"WeylFormElement({str(self)!r}, validity={v})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (m, mu, nu), c in self.items():
            factors = []
            if m:
                factors.append("h" if m == 1 else f"h^{m}")
            for i, e in enumerate(mu, start=1):
                if e:
                    factors.append(f"y{i}" if e == 1 else f"y{i}^{e}")
            if nu:
                factors.append("∧".join(f"dx{i}" for i in nu))
            cs = format_poly(c)
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"({cs})*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ---------------------------------------------------

    def to_records(self):
        return [
            {"h": m, "y": list(mu), "dx": list(nu), "coeff": format_poly(c)}
            for (m, mu, nu), c in self.items()
        ]

    @classmethod
    def from_records(cls, records, nvars, validity=INF):
        terms = {}
        for r in records:
            key = (int(r["h"]), tuple(r["y"]), tuple(r["dx"]))
            c = parse_poly(str(r["coeff"]), nvars)
            terms[key] = terms[key] + c if key in terms else c
        return cls(terms, nvars, validity)


def grade_component(e, p, q, m):
    """The ``W_p (x) Omega^q`` part of ``e`` carrying ``h^m``."""
    return e.select(lambda p_, q_, m_: (p_, q_, m_) == (p, q, m))


def wedge_with_form(e, nu):
    """Right multiplication ``e ^ dx_nu`` by a form monomial (given in any order)."""
    f = WeylFormElement.dx(*nu, nvars=e.nvars)
    if not f.terms:
        return WeylFormElement.zero(e.nvars, e.validity)
    ((_, _, fnu), fc), = f.terms.items()
    out = {}
    for (m, mu, enu), c in e.terms.items():
        r = form_product(enu, fnu)
        if r is None:
            continue
        s, nnu = r
        key = (m, mu, nnu)
        w = c * fc if s > 0 else -(c * fc)
        prev = out.get(key)
        w = w if prev is None else prev + w
        if w:
            out[key] = w
        else:
            out.pop(key, None)
    return WeylFormElement._raw(out, e.nvars, e.validity)
