"""Symplectic/Poisson data on a polynomial ring and Poisson connections.

Coordinates: A = Q[x1..x2n], Der A is free on d/dx_a, represented in the
fiber by y_a.  The Poisson matrix is ``P[i][j] = {x_i, x_j}``.  The
symplectic form on derivations is pinned by ``omega(ham x_i, ham x_j) =
{x_i, x_j}`` together with ``omega(X, Y) = <X, flat(Y)>``; this gives
``omega = -P^{-1}`` which :func:`validate_structure` re-derives and checks
symbolically rather than assuming.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .element import WeylFormElement
from .errors import DegreeError, InvalidConnectionError, StructureError
from .poly import RationalPoly, format_poly, parse_poly

__all__ = [
    "SymplecticStructure",
    "SymplecticConnection",
    "validate_structure",
    "validate_connection",
    "standard_structure",
    "flat_connection",
    "ham",
    "sharp",
    "flat",
    "poisson_bracket",
    "omega_pairing",
    "poly_det",
    "poly_inverse",
]


# -- polynomial matrices -----------------------------------------------------


def _zero(nv):
    return RationalPoly.zero(nv)


def _one(nv):
    return RationalPoly.const(1, nv)


def poly_det(M):
    """Determinant of a square matrix of :class:`RationalPoly` by cofactor expansion."""
    d = len(M)
    if d == 0:
        raise ValueError("empty matrix")
    nv = M[0][0].nvars

    @lru_cache(maxsize=None)
    def det_from(row, cols):
        if row == d:
            return _one(nv)
        total = _zero(nv)
        for k, c in enumerate(cols):
            entry = M[row][c]
            if not entry:
                continue
            rest = cols[:k] + cols[k + 1:]
            term = entry * det_from(row + 1, rest)
            total = total + term if k % 2 == 0 else total - term
        return total

    return det_from(0, tuple(range(d)))


def poly_inverse(M):
    """Inverse of a polynomial matrix, or ``None`` if the determinant is not a unit of Q[x]."""
    d = len(M)
    det = poly_det(M)
    if not det or not det.is_constant():
        return None
    inv_det = 1 / det.constant_term()
    inv = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            # adj[i][j] = (-1)^(i+j) * minor(j, i)
            minor = [[M[r][c] for c in range(d) if c != i] for r in range(d) if r != j]
            cof = poly_det(minor) if minor else _one(det.nvars)
            if (i + j) % 2:
                cof = -cof
            inv[i][j] = cof.scale(inv_det)
    return inv


def _matmul(A, B):
    nv = A[0][0].nvars
    rows, inner, cols = len(A), len(B), len(B[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            s = _zero(nv)
            for k in range(inner):
                if A[i][k] and B[k][j]:
                    s = s + A[i][k] * B[k][j]
            row.append(s)
        out.append(row)
    return out


def _is_identity(M):
    d = len(M)
    return all(M[i][j] == (1 if i == j else 0) for i in range(d) for j in range(d))


def _freeze(M):
    return tuple(tuple(row) for row in M)


# -- structure ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymplecticStructure:
    """Validated Poisson matrix with its symplectic form and duality maps.

    ``sharp_matrix[i][k]`` is the y_k coefficient of sharp(dx_i) and
    ``flat_matrix[b][j]`` the dx_j coefficient of flat(d/dx_b) (0-based).
    """

    n: int
    poisson: tuple
    omega: tuple
    sharp_matrix: tuple
    flat_matrix: tuple

    @property
    def nvars(self):
        return 2 * self.n

    @property
    def is_constant(self):
        return all(e.is_constant() for row in self.poisson for e in row)

    def omega_inverse(self):
        """Inverse of the form matrix; equals ``-P``."""
        return tuple(tuple(-e for e in row) for row in self.poisson)

    def poly(self, text):
        return parse_poly(text, self.nvars)

    def describe(self):
        return {
            "dimension": self.nvars,
            "poisson": [[format_poly(e) for e in row] for row in self.poisson],
            "omega": [[format_poly(e) for e in row] for row in self.omega],
        }


def _as_poly_matrix(raw):
    d = len(raw)
    out = []
    for row in raw:
        if len(row) != d:
            raise StructureError("Poisson matrix is not square")
        out.append([e if isinstance(e, RationalPoly) else (
            parse_poly(e, d) if isinstance(e, str) else RationalPoly.const(e, d)) for e in row])
    for row in out:
        for e in row:
            if e.nvars != d:
                raise StructureError(f"entries must be polynomials in {d} variables")
    return out


def _jacobi_residue(P):
    d = len(P)
    nv = d
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(j + 1, d):
                s = _zero(nv)
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for l in range(d):
                        if P[a][l]:
                            s = s + P[a][l] * P[b][c].diff(l + 1)
                if s:
                    return (i + 1, j + 1, k + 1), s
    return None


def validate_structure(poisson, check_jacobi=True):
    """Validate a Poisson matrix and derive omega, sharp and flat.

    ``poisson`` is a square matrix whose entries are :class:`RationalPoly`,
    polynomial strings or rationals.  Raises :class:`StructureError` when the
    dimension is odd, the matrix is not antisymmetric, the bracket violates
    the Jacobi identity, or there is no polynomial inverse.
    """
    P = _as_poly_matrix(poisson)
    d = len(P)
    if d == 0 or d % 2:
        raise StructureError(f"dimension {d} is not a positive even number")
    nv = d
    for i in range(d):
        for j in range(d):
            if P[i][j] + P[j][i]:
                raise StructureError(
                    f"not antisymmetric: P[{i + 1}][{j + 1}] + P[{j + 1}][{i + 1}] = "
                    f"{format_poly(P[i][j] + P[j][i])}")
    if check_jacobi:
        bad = _jacobi_residue(P)
        if bad is not None:
            (i, j, k), s = bad
            raise StructureError(f"Jacobi identity fails for (x{i}, x{j}, x{k}): residue {format_poly(s)}")
    Pinv = poly_inverse(P)
    if Pinv is None:
        raise StructureError(f"no polynomial inverse (determinant {format_poly(poly_det(P))} is not a unit)")

    sharp_m = [row[:] for row in P]
    flat_m = Pinv
    if not (_is_identity(_matmul(sharp_m, flat_m)) and _is_identity(_matmul(flat_m, sharp_m))):
        raise StructureError("sharp and flat are not mutually inverse")

    # omega(d_a, d_b) = <d_a, flat(d_b)> = flat_m[b][a]
    omega = [[flat_m[b][a] for b in range(d)] for a in range(d)]
    for i in range(d):
        for j in range(d):
            if omega[i][j] + omega[j][i]:
                raise StructureError("derived omega is not antisymmetric")
    # omega(ham x_i, ham x_j) = {x_i, x_j}
    for i in range(d):
        for j in range(d):
            s = _zero(nv)
            for a in range(d):
                for b in range(d):
                    if P[i][a] and P[j][b] and omega[a][b]:
                        s = s + P[i][a] * P[j][b] * omega[a][b]
            if s != P[i][j]:
                raise StructureError(
                    f"omega(ham x{i + 1}, ham x{j + 1}) = {format_poly(s)} differs from "
                    f"{{x{i + 1}, x{j + 1}}} = {format_poly(P[i][j])}")
    return SymplecticStructure(d // 2, _freeze(P), _freeze(omega), _freeze(sharp_m), _freeze(flat_m))


def standard_structure(n=1):
    """Darboux structure: {x_i, x_{n+i}} = 1."""
    d = 2 * n
    P = [[RationalPoly.zero(d) for _ in range(d)] for _ in range(d)]
    for i in range(n):
        P[i][n + i] = RationalPoly.const(1, d)
        P[n + i][i] = RationalPoly.const(-1, d)
    return validate_structure(P)


def poisson_bracket(st, f, g):
    """{f, g} = sum_ij P^ij d_i f d_j g."""
    s = RationalPoly.zero(st.nvars)
    df = [f.diff(i + 1) for i in range(st.nvars)]
    dg = [g.diff(j + 1) for j in range(st.nvars)]
    for i in range(st.nvars):
        if not df[i]:
            continue
        for j in range(st.nvars):
            if st.poisson[i][j] and dg[j]:
                s = s + st.poisson[i][j] * df[i] * dg[j]
    return s


def ham(st, f):
    """Hamiltonian derivation of ``f`` as a fiber-linear element: sum_j {f, x_j} y_j."""
    if isinstance(f, str):
        f = st.poly(f)
    nv = st.nvars
    terms = {}
    for j in range(nv):
        c = RationalPoly.zero(nv)
        for i in range(nv):
            if st.poisson[i][j]:
                di = f.diff(i + 1)
                if di:
                    c = c + st.poisson[i][j] * di
        if c:
            mu = [0] * nv
            mu[j] = 1
            terms[(0, tuple(mu), ())] = c
    return WeylFormElement(terms, nv)


def _require(e, p, q):
    bad = [(p_, q_, m_) for (p_, q_, m_) in e.bidegrees() if (p_, q_, m_) != (p, q, 0)]
    if bad:
        raise DegreeError(f"expected a (fiber {p}, form {q}, h^0) element, found components {sorted(bad)}")


def sharp(st, nu):
    """Extend dx_i -> ham(x_i) A-linearly to form-degree-1 elements."""
    _require(nu, 0, 1)
    nv = st.nvars
    terms = {}
    for (_, _, (i,)), c in nu.terms.items():
        for k in range(nv):
            coef = st.sharp_matrix[i - 1][k]
            if coef:
                mu = [0] * nv
                mu[k] = 1
                key = (0, tuple(mu), ())
                terms[key] = terms.get(key, RationalPoly.zero(nv)) + c * coef
    return WeylFormElement(terms, nv, nu.validity)


def flat(st, X):
    """Inverse of :func:`sharp`: fiber-degree-1 elements to 1-forms."""
    _require(X, 1, 0)
    nv = st.nvars
    terms = {}
    for (_, mu, _), c in X.terms.items():
        b = mu.index(1)
        for j in range(nv):
            coef = st.flat_matrix[b][j]
            if coef:
                key = (0, (0,) * nv, (j + 1,))
                terms[key] = terms.get(key, RationalPoly.zero(nv)) + c * coef
    return WeylFormElement(terms, nv, X.validity)


def omega_pairing(st, X, Y):
    """omega(X, Y) for fiber-linear elements X, Y (h- and form-free)."""
    _require(X, 1, 0)
    _require(Y, 1, 0)
    s = RationalPoly.zero(st.nvars)
    for (_, mx, _), cx in X.terms.items():
        a = mx.index(1)
        for (_, my, _), cy in Y.terms.items():
            b = my.index(1)
            if st.omega[a][b]:
                s = s + cx * cy * st.omega[a][b]
    return s


# -- connections -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SymplecticConnection:
    """Poisson connection given by lower-index Christoffel data.

    ``gamma_lower[a][b][c] = omega(nabla_a d_b, d_c)`` is totally symmetric and
    ``gamma_upper[a][b][c]`` is the d_c coefficient of ``nabla_a d_b`` (0-based).
    """

    structure: SymplecticStructure
    gamma_lower: tuple
    gamma_upper: tuple

    @property
    def is_flat_data(self):
        return all(not e for plane in self.gamma_lower for row in plane for e in row)


def _gamma_array(raw, d):
    nv = d
    G = [[[RationalPoly.zero(nv) for _ in range(d)] for _ in range(d)] for _ in range(d)]
    if raw is None:
        return G
    if isinstance(raw, dict):
        for key, v in raw.items():
            if isinstance(key, str):
                key = tuple(int(s) for s in key.split(","))
            if len(key) != 3 or not all(1 <= k <= d for k in key):
                raise InvalidConnectionError(f"bad Christoffel index {key}")
            a, b, c = (k - 1 for k in key)
            G[a][b][c] = v if isinstance(v, RationalPoly) else (
                parse_poly(v, nv) if isinstance(v, str) else RationalPoly.const(v, nv))
        return G
    for a in range(d):
        for b in range(d):
            for c in range(d):
                v = raw[a][b][c]
                G[a][b][c] = v if isinstance(v, RationalPoly) else (
                    parse_poly(v, nv) if isinstance(v, str) else RationalPoly.const(v, nv))
    return G


def validate_connection(st, gamma_lower=None):
    """Validate Christoffel data and raise the index with omega^{-1}.

    ``gamma_lower`` is a full ``2n x 2n x 2n`` array or a dict keyed by
    1-based index triples (tuples or ``"a,b,c"`` strings); absent entries
    are zero.  Raises :class:`InvalidConnectionError` when the data are not
    totally symmetric, or when torsion-freeness or parallelism fails.
    """
    d = st.nvars
    nv = d
    L = _gamma_array(gamma_lower, d)
    for a in range(d):
        for b in range(d):
            for c in range(d):
                for a2, b2, c2 in set(permutations((a, b, c))):
                    if L[a][b][c] != L[a2][b2][c2]:
                        raise InvalidConnectionError(
                            f"not totally symmetric: Gamma_{a + 1}{b + 1}{c + 1} = {format_poly(L[a][b][c])} "
                            f"but Gamma_{a2 + 1}{b2 + 1}{c2 + 1} = {format_poly(L[a2][b2][c2])}")
    winv = st.omega_inverse()
    U = [[[RationalPoly.zero(nv) for _ in range(d)] for _ in range(d)] for _ in range(d)]
    for a in range(d):
        for b in range(d):
            for e in range(d):
                s = RationalPoly.zero(nv)
                for c in range(d):
                    if L[a][b][c] and winv[c][e]:
                        s = s + L[a][b][c] * winv[c][e]
                U[a][b][e] = s
    # round trip: sum_d U[a][b][d] omega[d][c] == L[a][b][c]
    for a in range(d):
        for b in range(d):
            for c in range(d):
                s = RationalPoly.zero(nv)
                for k in range(d):
                    if U[a][b][k] and st.omega[k][c]:
                        s = s + U[a][b][k] * st.omega[k][c]
                if s != L[a][b][c]:
                    raise InvalidConnectionError("lowering the raised Christoffel symbols does not round-trip")
    for a in range(d):
        for b in range(d):
            for c in range(d):
                if U[a][b][c] != U[b][a][c]:
                    raise InvalidConnectionError(
                        f"torsion: Gamma^{c + 1}_{a + 1}{b + 1} != Gamma^{c + 1}_{b + 1}{a + 1}")
    for a in range(d):
        for b in range(d):
            for c in range(d):
                rhs = RationalPoly.zero(nv)
                for k in range(d):
                    if U[a][b][k] and st.omega[k][c]:
                        rhs = rhs + U[a][b][k] * st.omega[k][c]
                    if U[a][c][k] and st.omega[b][k]:
                        rhs = rhs + U[a][c][k] * st.omega[b][k]
                lhs = st.omega[b][c].diff(a + 1)
                if lhs != rhs:
                    raise InvalidConnectionError(
                        f"not parallel: d_{a + 1} omega_{b + 1}{c + 1} - (...) = {format_poly(lhs - rhs)}")
    return SymplecticConnection(st, tuple(tuple(tuple(r) for r in p) for p in L),
                                tuple(tuple(tuple(r) for r in p) for p in U))


def flat_connection(st):
    """Gamma = 0; valid only when omega is constant."""
    return validate_connection(st, None)
