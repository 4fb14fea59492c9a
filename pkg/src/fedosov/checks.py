"""Invariant suites shared by the ``check`` command and the test-suite.

Each suite takes a :class:`CheckContext` and returns a list of
:class:`CheckResult`; nothing here raises on a failed identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .element import WeylFormElement
from .engine import build_fedosov, curvature, fedosov_D, parity_defects, star_product
from .errors import CertificationError, FedosovError
from .operators import T, delta, delta_star, delta_tilde, exterior_d, nabla, tau
from .pbw import project, pbw_product, symmetrize
from .poly import RationalPoly
from .product import weyl_product
from .sampling import random_element, random_homogeneous_poly, rng_for
from .structure import poisson_bracket

__all__ = ["CheckResult", "CheckContext", "SUITES", "run_suite", "fiber_monomials"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    count: int = 0
    detail: str = ""

    def line(self):
        s = f"{self.name}: {'pass' if self.passed else 'FAIL'}"
        if self.count:
            s += f" ({self.count} cases)"
        if self.detail:
            s += f" [{self.detail}]"
        return s


@dataclass
class CheckContext:
    structure: object
    conn: object
    N: int = 6
    seed: int = 0
    samples: int = 20
    oracle_degree: int = 5
    order: int = 2
    _data: object = field(default=None, repr=False)

    @property
    def nvars(self):
        return self.structure.nvars

    def rng(self, salt=0):
        return rng_for(self.seed * 1000 + salt)

    def data(self):
        if self._data is None:
            self._data = build_fedosov(self.structure, self.conn, self.N)
        return self._data

    def random_elements(self, salt, validity=8, count=None):
        rng = self.rng(salt)
        return [random_element(rng, self.nvars, validity=validity)
                for _ in range(count or self.samples)]

    def random_quadratics(self, salt, count):
        rng = self.rng(salt)
        return [random_homogeneous_poly(rng, self.nvars, 2) for _ in range(count)]


def _tally(name, cases, pred):
    bad = 0
    first = ""
    for i, c in enumerate(cases):
        if not pred(c):
            bad += 1
            first = first or f"first failure at case {i}"
    return CheckResult(name, bad == 0, len(cases), first)


def suite_fundamental(ctx):
    st = ctx.structure
    es = ctx.random_elements(1)

    def ok(e):
        return delta_tilde(st, delta(st, e)) + delta(st, delta_tilde(st, e)) + tau(e) == e

    return [_tally("fundamental formula", es, ok)]


def _components(e):
    for p, q, m in sorted(e.bidegrees()):
        yield p, q, e.component(p, q, m)


def suite_euler(ctx):
    st = ctx.structure
    comps = [c for e in ctx.random_elements(1) for c in _components(e)]

    def ok(item):
        p, q, c = item
        return delta(st, delta_star(st, c)) + delta_star(st, delta(st, c)) == c.scale(p + q)

    return [_tally("euler identity", comps, ok)]


def suite_differentials(ctx):
    st = ctx.structure
    es = ctx.random_elements(2)
    return [
        _tally("delta^2 = 0", es, lambda e: not delta(st, delta(st, e))),
        _tally("delta*^2 = 0", es, lambda e: not delta_star(st, delta_star(st, e))),
        _tally("delta~^2 = 0", es, lambda e: not delta_tilde(st, delta_tilde(st, e))),
    ]


def _sign(e):
    odd = e.select(lambda p, q, m: q % 2 == 1)
    return e - odd.scale(2)


def suite_nabla(ctx):
    st, conn = ctx.structure, ctx.conn
    es = ctx.random_elements(3, validity=6)
    pairs = list(zip(es, ctx.random_elements(4, validity=6)))

    def leibniz(pair):
        a, b = pair
        lhs = nabla(conn, weyl_product(st, a, b))
        rhs = weyl_product(st, nabla(conn, a), b) + weyl_product(st, _sign(a), nabla(conn, b))
        return lhs == rhs

    return [
        _tally("delta nabla + nabla delta = 0", es,
               lambda e: not (delta(st, nabla(conn, e)) + nabla(conn, delta(st, e)))),
        _tally("T nabla = nabla T", es, lambda e: T(nabla(conn, e)) == nabla(conn, T(e))),
        _tally("nabla Leibniz rule", pairs, leibniz),
    ]


def fiber_monomials(nvars, max_degree):
    """Exponent tuples of total degree ``<= max_degree``, in a fixed order."""
    out = []
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            mu = [0] * nvars
            for i in combo:
                mu[i] += 1
            out.append(tuple(mu))
    return out


def oracle_agreement(st, max_degree=5):
    """Compare the product with PBW straightening on all monomial pairs.

    Returns ``(cases, mismatches)``.
    """
    nv = st.nvars
    monos = fiber_monomials(nv, max_degree)
    cases = bad = 0
    for a in monos:
        for b in monos:
            if sum(a) + sum(b) > max_degree:
                continue
            cases += 1
            ya = WeylFormElement.monomial(1, 0, a, (), nv)
            yb = WeylFormElement.monomial(1, 0, b, (), nv)
            want = project(st, pbw_product(st, symmetrize(st, a), symmetrize(st, b)))
            if weyl_product(st, ya, yb) != want:
                bad += 1
    return cases, bad


def suite_oracle(ctx):
    cases, bad = oracle_agreement(ctx.structure, ctx.oracle_degree)
    return [CheckResult("oracle agreement", bad == 0, cases, f"{bad} mismatches" if bad else "")]


def _guarded(name, fn):
    try:
        detail = fn()
    except (CertificationError, FedosovError) as exc:
        return CheckResult(name, False, 1, str(exc).splitlines()[0])
    return CheckResult(name, True, 1, detail or "")


def suite_curvature(ctx):
    return [_guarded("curvature identities", lambda: str(curvature(ctx.structure, ctx.conn)))]


def suite_flatness(ctx):
    st, conn = ctx.structure, ctx.conn
    try:
        data = ctx.data()
    except CertificationError as exc:
        return [CheckResult("flatness certificate", False, 1, str(exc).splitlines()[0])]
    through = data.report.get("beta_zero_through", -1)
    return [
        CheckResult("delta R = 0", not delta(st, data.R), 1),
        CheckResult("nabla R = d T(R)", nabla(conn, data.R) == exterior_d(T(data.R)), 1),
        CheckResult("delta~ gamma = 0", not delta_tilde(st, data.gamma), 1),
        CheckResult(f"β = 0 up to degree {through}", through >= data.N, 1),
    ]


def generators(nvars):
    out = []
    for i in range(1, nvars + 1):
        out += [WeylFormElement.x(i, nvars), WeylFormElement.y(i, nvars),
                WeylFormElement.dx(i, nvars=nvars)]
    return out


def d_squared_ok(data, e):
    D2 = fedosov_D(data, fedosov_D(data, e))
    return not D2 and D2.validity >= min(e.validity, data.N) - 2


def suite_d2(ctx):
    data = ctx.data()
    gens = generators(ctx.nvars)
    es = ctx.random_elements(5, validity=ctx.N)
    return [
        _tally("D^2 = 0 on generators", gens, lambda e: d_squared_ok(data, e)),
        _tally("D^2 = 0 on random elements", es, lambda e: d_squared_ok(data, e)),
    ]


def _bracket_ok(data, u, v):
    st = data.structure
    a = star_product(data, u, v, 1)
    b = star_product(data, v, u, 1)
    diff = a - b
    zero_mu = (0,) * st.nvars
    return (not diff.coefficient(0, zero_mu)
            and diff.coefficient(1, zero_mu) == poisson_bracket(st, u, v))


def _assoc_ok(data, u, v, w, K):
    uv = star_product(data, u, v, K)
    vw = star_product(data, v, w, K)
    left = _star_series(data, uv, w, K)
    right = _star_series(data, u, vw, K)
    return left == right


def _star_series(data, a, b, K):
    """Bilinear extension of the star product to h-series arguments, mod h^(K+1)."""
    nv = data.nvars
    zero_mu = (0,) * nv
    total = WeylFormElement.zero(nv, 2 * K)

    def parts(x):
        if isinstance(x, RationalPoly):
            return [(0, x)]
        return [(m, c) for (m, mu, nu), c in x.items()]

    for ma, ca in parts(a):
        for mb, cb in parts(b):
            k = K - ma - mb
            if k < 0:
                continue
            s = star_product(data, ca, cb, k).times_h(ma + mb)
            total = total + s.with_validity(2 * K)
    return total.truncate(2 * K)


def suite_star(ctx):
    data = ctx.data()
    K = min(ctx.order, data.N // 2)
    qs = ctx.random_quadratics(6, 2 * ctx.samples)
    pairs = list(zip(qs[::2], qs[1::2]))
    ts = ctx.random_quadratics(7, 30)
    triples = list(zip(ts[::3], ts[1::3], ts[2::3]))
    return [
        _tally("bracket recovery", pairs, lambda p: _bracket_ok(data, *p)),
        _tally(f"associativity mod h^{K + 1}", triples, lambda t: _assoc_ok(data, *t, K)),
    ]


def suite_parity(ctx):
    data = ctx.data()
    K = min(3, data.N // 2)
    qs = ctx.random_quadratics(8, 20)
    out = []
    defects = [parity_defects(data, u, v, K) for u, v in zip(qs[::2], qs[1::2])]
    for t in range(K + 1):
        bad = sum(1 for d in defects if d[t])
        out.append(CheckResult(f"parity mu_{t}", bad == 0, len(defects),
                               f"{bad} nonzero defects" if bad else ""))
    return out


SUITES = {
    "fundamental": suite_fundamental,
    "euler": suite_euler,
    "differentials": suite_differentials,
    "nabla": suite_nabla,
    "oracle": suite_oracle,
    "curvature": suite_curvature,
    "flatness": suite_flatness,
    "d2": suite_d2,
    "star": suite_star,
    "parity": suite_parity,
}


def run_suite(ctx, name):
    if name == "all":
        return [r for fn in SUITES.values() for r in fn(ctx)]
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all") from None
    return fn(ctx)
