"""Curvature, the Fedosov correction series, flat sections and the star product."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .element import WeylFormElement
from .errors import CertificationError
from .operators import T, delta, delta_tilde, exterior_d, nabla, tau
from .poly import RationalPoly, format_poly, parse_poly
from .product import ad_gamma, div_h, graded_commutator, weyl_product
from .structure import ham

__all__ = [
    "FedosovData",
    "FlatSection",
    "curvature",
    "gamma_recursion",
    "flatness_residue",
    "build_fedosov",
    "fedosov_D",
    "flat_section",
    "star_product",
    "quantize",
    "deformation_coefficients",
    "parity_defects",
    "hseries_coefficients",
    "hseries_to_records",
]


def _nabla_squared(conn, e):
    return nabla(conn, nabla(conn, e))


def curvature(st, conn, certify=True):
    """``R = -1/2 sum_i ham(x_i) o nabla^2(y_i)``, kept in fiber degree 2, form degree 2.

    With ``certify`` the identities ``(1/h)[R, y_b] = nabla^2(y_b)``,
    ``delta R = 0`` and ``nabla R = d T(R)`` are checked exactly.
    """
    nv = st.nvars
    acc = WeylFormElement.zero(nv)
    for i in range(1, nv + 1):
        hx = ham(st, RationalPoly.var(i, nv))
        acc = acc + weyl_product(st, hx, _nabla_squared(conn, WeylFormElement.y(i, nv)))
    R = acc.scale(Fraction(-1, 2)).select(lambda p, q, m: (p, q, m) == (2, 2, 0))
    if certify:
        for b in range(1, nv + 1):
            yb = WeylFormElement.y(b, nv)
            lhs = ad_gamma(st, R, yb)
            rhs = _nabla_squared(conn, yb)
            if lhs != rhs:
                raise CertificationError(
                    f"(1/h)[R, y{b}] - nabla^2(y{b}) = {lhs - rhs}; connection is not a Poisson connection")
        if delta(st, R):
            raise CertificationError(f"delta R = {delta(st, R)} is not zero")
        if nabla(conn, R) != exterior_d(T(R)):
            raise CertificationError("nabla R differs from d T(R)")
    return R


def _half_square_over_h(st, a, b=None):
    """``(1/h)(a b + b a)/2`` for odd a, b, through the graded commutator."""
    c = graded_commutator(st, a, a if b is None else b)
    return div_h(c).scale(Fraction(1, 2))


def gamma_recursion(st, conn, R, N):
    """Correction series ``gamma = sum_{3<=t<=N} gamma_t``.

    ``gamma_3 = d~R`` and ``gamma_t = (1/h) sum_{p+q-1=t} d~(gamma_p gamma_q) + d~ nabla gamma_{t-1}``.
    Each ``gamma_t`` is computed exactly from strictly lower pieces, so the
    returned element is exact through W-degree ``N``.
    """
    if N < 3:
        raise ValueError("truncation order must be at least 3")
    nv = st.nvars
    pieces = {3: delta_tilde(st, R).exact()}
    for t in range(4, N + 1):
        s = delta_tilde(st, nabla(conn, pieces[t - 1]))
        for p in range(3, t - 1):
            q = t + 1 - p
            if q < p or q < 3:
                continue
            if p == q:
                prod = _half_square_over_h(st, pieces[p])
            else:
                # gamma_p gamma_q + gamma_q gamma_p for odd forms
                prod = div_h(graded_commutator(st, pieces[p], pieces[q]))
            s = s + delta_tilde(st, prod)
        pieces[t] = s.exact()
    for t, g in pieces.items():
        bad = {(p, q, m) for p, q, m in g.bidegrees() if p + 2 * m != t or q != 1}
        if bad:
            raise CertificationError(f"gamma_{t} has stray components {sorted(bad)}")
    gamma = WeylFormElement.zero(nv)
    for g in pieces.values():
        gamma = gamma + g
    return gamma.truncate(N)


def flatness_residue(st, conn, R, gamma):
    """``-delta gamma + R + nabla gamma + (1/h) gamma^2 - T(R)``; zero for a flat correction."""
    return (-delta(st, gamma) + R + nabla(conn, gamma)
            + _half_square_over_h(st, gamma) - T(R))


@dataclass(eq=False)
class FedosovData:
    """Certified ingredients of ``D = nabla - delta + (1/h) ad gamma``."""

    structure: object
    conn: object
    R: WeylFormElement
    gamma: WeylFormElement
    N: int
    report: dict = field(default_factory=dict)
    _sections: dict = field(default_factory=dict, repr=False)

    @property
    def nvars(self):
        return self.structure.nvars


def build_fedosov(st, conn, N, certify=True):
    """Compute R and gamma through W-degree ``N`` and certify them.

    The certificate checks ``delta R = 0``, ``nabla R = dT(R)``,
    ``d~gamma = 0``, and that ``beta = -residue`` satisfies ``d~beta = 0``,
    ``tau beta = 0`` and vanishes through degree ``N``.  The residue in degree
    ``N`` involves ``delta gamma_(N+1)``, so one extra piece is computed for
    the certificate and dropped afterwards.
    """
    R = curvature(st, conn, certify=certify)
    full = gamma_recursion(st, conn, R, N + 1)
    gamma = full.truncate(N)
    report = {}
    if certify:
        dg = delta_tilde(st, full)
        if dg:
            raise CertificationError(f"delta~ gamma = {dg} is not zero")
        beta = -flatness_residue(st, conn, R, full)
        if delta_tilde(st, beta):
            raise CertificationError("delta~ beta is not zero")
        if tau(beta):
            raise CertificationError("tau beta is not zero")
        if beta:
            raise CertificationError(f"flatness certificate fails: beta = {beta}")
        report = {
            "delta_R": True,
            "nabla_R_eq_dTR": True,
            "delta_tilde_gamma": True,
            "beta_zero_through": beta.validity,
        }
    return FedosovData(st, conn, R, gamma, N, report)


def fedosov_D(data, e):
    """``D(e) = nabla(e) - delta(e) + (1/h)[gamma, e]``."""
    st = data.structure
    return nabla(data.conn, e) - delta(st, e) + ad_gamma(st, data.gamma, e)


def _d_plus_delta(data, e):
    return nabla(data.conn, e) + ad_gamma(data.structure, data.gamma, e)


@dataclass(eq=False)
class FlatSection:
    u: WeylFormElement
    b: WeylFormElement
    N: int


def _as_hseries(u, nv):
    if isinstance(u, WeylFormElement):
        if any(p or q for p, q, _ in u.bidegrees()):
            raise ValueError("flat sections start from an element of A[[h]]")
        return u
    if isinstance(u, str):
        u = parse_poly(u, nv)
    if isinstance(u, RationalPoly):
        return WeylFormElement.from_poly(u)
    return WeylFormElement.scalar(u, nv)


def flat_section(data, u, N=None, certify=True):
    """Unique ``b`` with ``D(b) = 0`` and ``tau(b) = u``, through W-degree ``N``.

    Sums the series ``b = sum_j c_j`` with ``c_0 = u`` and
    ``c_{j+1} = d~(D + delta)(c_j)``; each step raises the lowest W-degree by
    at least one.  ``N`` defaults to ``data.N``, the most the stored gamma
    supports: degree d of ``b`` only involves ``gamma_t`` with ``t <= d``.
    """
    if N is None:
        N = data.N
    if N > data.N:
        raise ValueError(f"gamma truncated at {data.N} supports flat sections through degree {data.N}")
    u = _as_hseries(u, data.nvars)
    key = (tuple(sorted(u.terms.items(), key=lambda kv: kv[0])), N)
    hit = data._sections.get(key)
    if hit is not None:
        return hit
    st = data.structure
    inc = u
    b = u.truncate(N)
    for _ in range(N + 2):
        inc = delta_tilde(st, _d_plus_delta(data, inc)).truncate(N)
        if not inc.terms:
            b = b.with_validity(inc.validity)
            break
        b = b + inc
    else:
        raise CertificationError("flat-section iteration did not stabilize; monotonicity is violated")
    if b.validity < N:
        raise CertificationError(f"flat section only exact through degree {b.validity} < {N}")
    section = FlatSection(u, b, N)
    if certify:
        if tau(b) != u.truncate(N):
            raise CertificationError("tau(b) differs from u")
        Db = fedosov_D(data, b)
        if Db:
            raise CertificationError(f"D(b) = {Db} does not vanish")
    data._sections[key] = section
    return section


def star_product(data, u, v, K):
    """``u * v = tau(b_u o b_v)`` modulo ``h^(K+1)``, as an element of A[[h]].

    Only W-degrees up to ``2K`` of the flat sections enter, so gamma through
    ``2K`` suffices; :func:`quantize` builds with the roomier ``2K + 2``.
    """
    if data.N < 2 * K:
        raise ValueError(f"order K={K} needs truncation N >= {2 * K}, have {data.N}")
    bu = flat_section(data, u, 2 * K).b
    bv = flat_section(data, v, 2 * K).b
    prod = tau(weyl_product(data.structure, bu, bv))
    if prod.validity < 2 * K:
        raise CertificationError(f"star product only exact through W-degree {prod.validity}")
    return prod.truncate(2 * K)


def quantize(st, conn, K, margin=2):
    """Certified Fedosov data good for star products through ``h^K``."""
    return build_fedosov(st, conn, max(3, 2 * K + margin))


def hseries_coefficients(e, K):
    """Coefficients ``[c_0, ..., c_K]`` of an element of A[[h]]."""
    nv = e.nvars
    zero_mu = (0,) * nv
    return [e.coefficient(t, zero_mu, ()) for t in range(K + 1)]


def hseries_to_records(e):
    """``[{"h": t, "coeff": "<poly>"}]`` for nonzero coefficients, ascending in t."""
    out = []
    for (m, mu, nu), c in e.items():
        if any(mu) or nu:
            raise ValueError("not an element of A[[h]]")
        out.append({"h": m, "coeff": format_poly(c)})
    return out


def deformation_coefficients(data, u, v, K):
    """``[mu_0(u, v), ..., mu_K(u, v)]`` with ``u * v = sum_t mu_t h^t``."""
    return hseries_coefficients(star_product(data, u, v, K), K)


def parity_defects(data, u, v, K):
    """``mu_t(u, v) - (-1)^t mu_t(v, u)`` for t = 0..K."""
    a = deformation_coefficients(data, u, v, K)
    b = deformation_coefficients(data, v, u, K)
    return [a[t] - (b[t] if t % 2 == 0 else -b[t]) for t in range(K + 1)]
