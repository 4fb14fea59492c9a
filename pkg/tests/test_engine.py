from fractions import Fraction

import pytest

from fedosov import WeylFormElement as W
from fedosov import (
    ad_gamma,
    build_fedosov,
    curvature,
    delta,
    delta_tilde,
    fedosov_D,
    flat_section,
    hseries_coefficients,
    hseries_to_records,
    nabla,
    parity_defects,
    poisson_bracket,
    quantize,
    star_product,
    tau,
    validate_connection,
)
from fedosov.checks import CheckContext, run_suite
from fedosov.sampling import random_homogeneous_poly, random_poly

NV = 2


def mono(mu, nu=(), m=0, c=1):
    return W.monomial(c, m, mu, nu, NV)


def test_flat_connection_has_zero_curvature(flat_data):
    assert not flat_data.R
    assert not flat_data.gamma


def test_constant_christoffel_is_flat(st1):
    conn = validate_connection(st1, {(1, 1, 1): 1})
    assert not curvature(st1, conn)
    assert not build_fedosov(st1, conn, 6).gamma


def test_curved_example_frozen(curved_data):
    third = Fraction(-1, 8)
    assert curved_data.R == mono((0, 2), (1, 2), c=Fraction(-1, 2))
    assert curved_data.gamma == (mono((0, 3), (2,), c=third) + mono((1, 2), (1,), c=third)
                                 + mono((0, 5), (2,), c=Fraction(1, 128))
                                 + mono((1, 4), (1,), c=Fraction(1, 128)))
    assert curved_data.report["beta_zero_through"] == 6


def test_gamma_pieces(curved_data, st1):
    g3 = curved_data.gamma.homogeneous(3)
    assert g3 == delta_tilde(st1, curved_data.R)
    assert not delta_tilde(st1, g3)
    assert all(q == 1 for _, q, _ in curved_data.gamma.bidegrees())


def test_curvature_certificate_identities(curved_data, st1, curved1):
    R = curved_data.R
    assert not delta(st1, R)
    for b in (1, 2):
        yb = W.y(b, NV)
        assert ad_gamma(st1, R, yb) == nabla(curved1, nabla(curved1, yb))


def test_non_poisson_connection_rejected(twisted):
    # constant lower symbols are not parallel for an x-dependent form
    from fedosov import InvalidConnectionError

    with pytest.raises(InvalidConnectionError):
        validate_connection(twisted, {(i, j, k): 0 for i in range(1, 5) for j in range(1, 5)
                                      for k in range(1, 5)} | {(1, 1, 1): 1})


def test_D_examples(flat_data):
    x1, y1 = W.x(1, NV), W.y(1, NV)
    assert fedosov_D(flat_data, x1) == W.dx(1, nvars=NV)
    assert fedosov_D(flat_data, x1 + y1) == W.dx(1, nvars=NV) + W.dx(2, nvars=NV)
    assert not fedosov_D(flat_data, W.h(NV))


def test_flat_sections_trivial(curved_data):
    assert flat_section(curved_data, 1).b == W.scalar(1, NV)
    assert flat_section(curved_data, W.h(NV)).b == W.h(NV)


def test_flat_section_flat_case(flat_data, st1):
    assert flat_section(flat_data, st1.poly("x1")).b == W.x(1, NV) + W.y(2, NV)
    # Taylor shift x -> x + P y
    b = flat_section(flat_data, st1.poly("x1^2*x2")).b
    want = (mono((0, 0)).scale(st1.poly("x1^2*x2")) + mono((0, 1)).scale(st1.poly("2*x1*x2"))
            - mono((1, 0)).scale(st1.poly("x1^2")) + mono((0, 2)).scale(st1.poly("x2"))
            - mono((1, 1)).scale(st1.poly("2*x1")) - mono((1, 2)))
    assert b == want


def test_flat_section_curved_frozen(curved_data, st1):
    b = flat_section(curved_data, st1.poly("x1")).b
    want = (W.x(1, NV) + W.y(2, NV) + mono((0, 3), c=Fraction(-1, 24))
            + mono((0, 5), c=Fraction(3, 640)))
    assert b == want
    assert b.validity >= 6


def test_flat_section_linear(curved_data, st1, rng):
    for _ in range(5):
        u, v = random_poly(rng, NV, 3), random_poly(rng, NV, 3)
        bu = flat_section(curved_data, u).b
        bv = flat_section(curved_data, v).b
        assert flat_section(curved_data, u + v.scale(3)).b == bu + bv.scale(3)
        assert tau(bu) == W.from_poly(u)


def test_flat_section_degree_guard(curved_data):
    with pytest.raises(ValueError):
        flat_section(curved_data, 1, N=curved_data.N + 1)


def test_star_examples(flat_data, curved_data, st1):
    p = st1.poly
    assert hseries_to_records(star_product(flat_data, p("x1"), p("x2"), 1)) == [
        {"h": 0, "coeff": "x1*x2"}, {"h": 1, "coeff": "1/2"}]
    assert star_product(curved_data, p("2/3"), p("x1*x2"), 2) == W.from_poly(p("2/3*x1*x2"))
    assert star_product(curved_data, p("x1^2"), p("x2^2"), 3) == (
        W.from_poly(p("x1^2*x2^2")) + W.from_poly(p("2*x1*x2"), m=1)
        + W.from_poly(p("1/2"), m=2))


def test_star_order_guard(curved_data, st1):
    with pytest.raises(ValueError):
        star_product(curved_data, st1.poly("x1"), st1.poly("x2"), 4)


def test_naive_quantization(curved_data, st1, rng):
    for _ in range(5):
        u, v = random_homogeneous_poly(rng, NV, 2), random_homogeneous_poly(rng, NV, 2)
        c = hseries_coefficients(star_product(curved_data, u, v, 1), 1)
        assert c[0] == u * v
        assert c[1] == poisson_bracket(st1, u, v).scale(Fraction(1, 2))


def test_self_product_has_even_orders_only(curved_data, st1):
    u = st1.poly("x1^2 + x1*x2")
    c = hseries_coefficients(star_product(curved_data, u, u, 3), 3)
    assert not c[1] and not c[3]


def test_parity_defects_vanish(curved_data, st1):
    assert all(not d for d in parity_defects(curved_data, st1.poly("x1^2"), st1.poly("x1*x2^2"), 3))


def test_quantize_margin(st1, curved1):
    assert quantize(st1, curved1, 2).N == 6


@pytest.mark.parametrize("suite", ["curvature", "flatness", "d2", "star"])
def test_engine_suites(st1, curved_data, suite):
    ctx = CheckContext(st1, curved_data.conn, N=6, samples=10, seed=11)
    ctx._data = curved_data
    for r in run_suite(ctx, suite):
        assert r.passed, r.line()


def test_certificate_detects_perturbations(curved_data, st1, curved1):
    from fedosov import flatness_residue

    g = curved_data.gamma
    assert flatness_residue(st1, curved1, curved_data.R, g + mono((3, 0), (1,)))
    # delta-exact changes keep the residue and are caught by the normalization
    exact_change = mono((0, 3), (1,))
    assert not flatness_residue(st1, curved1, curved_data.R, g + exact_change)
    assert delta_tilde(st1, g + exact_change)

