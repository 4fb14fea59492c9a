"""Sparse multivariate polynomials over Q in the base variables x1..x2n."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["RationalPoly", "PolySyntaxError", "parse_poly", "format_poly"]


class PolySyntaxError(ValueError):
    """Raised by :func:`parse_poly`; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at position {pos})"
        super().__init__(message)


def _to_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class RationalPoly:
    """Exact polynomial in ``nvars`` commuting variables.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero
    :class:`~fractions.Fraction` coefficients. Instances are treated as
    immutable; every operation returns a new polynomial.
    """

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms=None, nvars=0):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise ValueError(f"exponent vector {exps} does not have length {nvars}")
                c = _to_fraction(c)
                if c:
                    clean[tuple(exps)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars):
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars):
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars):
        c = _to_fraction(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i, nvars, power=1):
        """The monomial ``x_i**power`` (``i`` is 1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable x{i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i - 1] = power
        return cls._raw({tuple(e): Fraction(1)}, nvars)

    @classmethod
    def parse(cls, text, nvars):
        return parse_poly(text, nvars)

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Rational)):
            return RationalPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return RationalPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        c = _to_fraction(c)
        if not c:
            return RationalPoly.zero(self.nvars)
        return RationalPoly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, RationalPoly):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return RationalPoly.zero(self.nvars)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return RationalPoly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = RationalPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, i):
        """Partial derivative with respect to x_i (1-based)."""
        k = i - 1
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = e[:k] + (e[k] - 1,) + e[k + 1:]
                out[ne] = c * e[k]
        return RationalPoly._raw(out, self.nvars)

    def exact_div_const(self, c):
        return self.scale(Fraction(1) / _to_fraction(c))

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.terms == RationalPoly.const(other, self.nvars).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"RationalPoly({format_poly(self)!r}, nvars={self.nvars})"

    def __str__(self):
        return format_poly(self)


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)(\d+)|([+\-*/^]))")


def _tokenize(text):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.start() == m.end():
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = pos
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", int(m.group(3)), start))
        else:
            tokens.append((m.group(4), None, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


def parse_poly(text, nvars):
    """Parse ``text`` such as ``"3/2*x1^2*x2 - x2"`` into a :class:`RationalPoly`.

    Grammar (whitespace ignored)::

        expr   := ['-'] term (('+'|'-') term)*
        term   := coeff ('*' factor)* | factor ('*' factor)*
        factor := var ('^' uint)?
        var    := 'x' uint
        coeff  := int ('/' uint)?
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0] if tok[1] is None else tok[1])
            raise PolySyntaxError(f"expected {kind}, found {what}", tok[2])
        i += 1
        return tok

    def factor():
        _, idx, pos = take("var")
        if not 1 <= idx <= nvars:
            raise PolySyntaxError(f"variable x{idx} out of range for {nvars} variables", pos)
        power = 1
        if peek()[0] == "^":
            take("^")
            power = take("int")[1]
        return RationalPoly.var(idx, nvars, power)

    def term():
        if peek()[0] == "int":
            num = take("int")[1]
            den = 1
            if peek()[0] == "/":
                take("/")
                _, den, pos = take("int")
                if den == 0:
                    raise PolySyntaxError("zero denominator", pos)
            acc = RationalPoly.const(Fraction(num, den), nvars)
        else:
            acc = factor()
        while peek()[0] == "*":
            take("*")
            acc = acc * factor()
        return acc

    sign = 1
    if peek()[0] == "-":
        take("-")
        sign = -1
    elif peek()[0] == "+":
        take("+")
    total = term() * sign
    while peek()[0] in ("+", "-"):
        op = take(peek()[0])[0]
        t = term()
        total = total + t if op == "+" else total - t
    if peek()[0] != "end":
        tok = peek()
        raise PolySyntaxError(f"unexpected token {tok[0] if tok[1] is None else tok[1]!r}", tok[2])
    return total


def _monomial_str(exps):
    parts = []
    for k, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{k}")
        elif e > 1:
            parts.append(f"x{k}^{e}")
    return "*".join(parts)


def _sort_key(exps):
    # graded, then lexicographic, highest first
    return (-sum(exps), tuple(-e for e in exps))


def format_poly(p):
    """Deterministic text form accepted back by :func:`parse_poly`."""
    if not p.terms:
        return "0"
    out = []
    for exps in sorted(p.terms, key=_sort_key):
        c = p.terms[exps]
        mono = _monomial_str(exps)
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)
