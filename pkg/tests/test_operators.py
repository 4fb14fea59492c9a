from fractions import Fraction

import pytest

from fedosov import WeylFormElement as W
from fedosov import (
    T,
    delta,
    delta_star,
    delta_tilde,
    epsilon,
    exterior_d,
    graded_commutator,
    nabla,
    tau,
    validate_connection,
)
from fedosov.checks import CheckContext, run_suite
from fedosov.problem import symmetrize_christoffel
from fedosov.sampling import random_element

NV = 2


def y(i, power=1):
    return W.y(i, NV, power)


def dx(*i):
    return W.dx(*i, nvars=NV)


def mono(mu, nu=(), m=0, c=1):
    return W.monomial(c, m, mu, nu, NV)


def test_delta_examples(st1):
    assert delta(st1, y(2)) == dx(1)
    assert delta(st1, y(1)) == -dx(2)
    assert delta(st1, mono((1, 1))) == mono((0, 1), (2,), c=-1) + mono((1, 0), (1,))
    assert not delta(st1, W.x(1, NV))


def test_delta_star_examples(st1):
    assert delta_star(st1, dx(1)) == y(2)
    assert delta_star(st1, dx(1, 2)) == mono((0, 1), (2,)) + mono((1, 0), (1,))


def test_delta_tilde_examples(st1):
    assert delta_tilde(st1, dx(1)) == y(2)
    assert not delta_tilde(st1, W.from_poly(st1.poly("x1^2"), m=3))
    assert delta_tilde(st1, mono((1, 0), (1,))) == mono((1, 1), c=Fraction(1, 2))


def test_fundamental_formula_worked_case(st1):
    e = mono((1, 0), (1,))
    lhs = delta_tilde(st1, delta(st1, e)) + delta(st1, delta_tilde(st1, e)) + tau(e)
    assert lhs == e


def test_projections():
    assert tau(mono((1, 1), m=1) + W.h(NV)) == W.h(NV)
    assert T(mono((1, 0), (1,)) + mono((0, 0), (2,), m=1)) == mono((0, 0), (2,), m=1)
    assert epsilon(W.x(1, NV) + y(1) + W.h(NV)) == W.x(1, NV).terms[(0, (0, 0), ())]


def test_nabla_flat(st1, flat1):
    assert nabla(flat1, mono((1, 0)).scale(st1.poly("x1"))) == mono((1, 0), (1,))


def test_nabla_christoffel(st1):
    conn = validate_connection(st1, {(1, 1, 1): 1})
    assert nabla(conn, y(1)) == mono((0, 1), (1,), c=-1)


def test_exterior_d(st1):
    f = W.from_poly(st1.poly("x1*x2"))
    assert exterior_d(f) == dx(1).scale(st1.poly("x2")) + dx(2).scale(st1.poly("x1"))
    assert not exterior_d(exterior_d(f))
    with pytest.raises(ValueError):
        exterior_d(y(1))


def test_validity_shifts(st1):
    e = y(1, 3).wedge((1,)).with_validity(5)
    assert delta(st1, e).validity == 4
    assert delta_star(st1, e).validity == 6


@pytest.mark.parametrize("name", ["st1", "st2", "twisted"])
@pytest.mark.parametrize("suite", ["fundamental", "euler", "differentials"])
def test_identity_suites(name, suite, request):
    st = request.getfixturevalue(name)
    ctx = CheckContext(st, validate_connection(st) if st.is_constant else None, samples=25, seed=3)
    for r in run_suite(ctx, suite):
        assert r.passed, r.line()


@pytest.mark.parametrize("gamma", [None, {(1, 1, 1): 1}, {(1, 1, 1): "x2", (2, 2, 2): "x1^2", (1, 1, 2): "x1"}])
def test_nabla_suites(st1, gamma):
    table, _ = symmetrize_christoffel({",".join(map(str, k)): v for k, v in (gamma or {}).items()}, 2)
    ctx = CheckContext(st1, validate_connection(st1, table), samples=20, seed=5)
    for r in run_suite(ctx, "nabla"):
        assert r.passed, r.line()


def test_forms_are_central(st2, rng):
    for _ in range(10):
        a = random_element(rng, 4, validity=6, max_terms=3)
        f = W.from_poly(st2.poly("x1 - x3^2")).wedge((2,))
        assert not graded_commutator(st2, a, f)
