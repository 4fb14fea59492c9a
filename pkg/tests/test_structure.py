import pytest

from fedosov import WeylFormElement as W
from fedosov import (
    InvalidConnectionError,
    StructureError,
    flat,
    ham,
    omega_pairing,
    poisson_bracket,
    sharp,
    validate_connection,
    validate_structure,
)
from fedosov.poly import RationalPoly
from fedosov.sampling import random_poly


def test_standard_structure(st1):
    assert [[str(c) for c in row] for row in st1.omega] == [["0", "1"], ["-1", "0"]]
    assert st1.is_constant


def test_no_polynomial_inverse():
    with pytest.raises(StructureError, match="no polynomial inverse"):
        validate_structure([["0", "x1"], ["-x1", "0"]])


def test_not_antisymmetric():
    with pytest.raises(StructureError, match="antisymmetric"):
        validate_structure([["0", "1"], ["1", "0"]])


def test_odd_dimension():
    with pytest.raises(StructureError):
        validate_structure([["0"]])


def test_jacobi_violation():
    P = [["0", "x3", "0", "0"], ["-x3", "0", "0", "0"], ["0", "0", "0", "1"], ["0", "0", "-1", "0"]]
    with pytest.raises(StructureError, match="Jacobi"):
        validate_structure(P)


def test_twisted_structure_is_x_dependent(twisted):
    assert not twisted.is_constant
    assert any(not c.is_constant() for row in twisted.omega for c in row)


def test_ham_examples(st1):
    assert ham(st1, "x1") == W.y(2, 2)
    assert ham(st1, "x2") == -W.y(1, 2)
    assert not ham(st1, "7/3")


def test_sharp_flat_examples(st1):
    dx1, dx2 = W.dx(1, nvars=2), W.dx(2, nvars=2)
    assert sharp(st1, dx1) == W.y(2, 2)
    assert sharp(st1, dx2) == -W.y(1, 2)
    assert flat(st1, sharp(st1, dx1)) == dx1
    assert flat(st1, W.y(1, 2)) == -dx2


@pytest.mark.parametrize("name", ["st1", "st2", "twisted"])
def test_omega_of_hamiltonians_is_bracket(name, request, rng):
    st = request.getfixturevalue(name)
    for _ in range(20):
        f = random_poly(rng, st.nvars, 3)
        g = random_poly(rng, st.nvars, 3)
        assert omega_pairing(st, ham(st, f), ham(st, g)) == poisson_bracket(st, f, g)


def test_bracket_jacobi(twisted, rng):
    st = twisted
    for _ in range(5):
        f, g, k = (random_poly(rng, 4, 2) for _ in range(3))
        s = (poisson_bracket(st, f, poisson_bracket(st, g, k))
             + poisson_bracket(st, g, poisson_bracket(st, k, f))
             + poisson_bracket(st, k, poisson_bracket(st, f, g)))
        assert not s


def test_flat_connection(st1):
    conn = validate_connection(st1)
    assert conn.is_flat_data
    assert all(not c for plane in conn.gamma_upper for row in plane for c in row)


def test_connection_raising(st1):
    conn = validate_connection(st1, {(1, 1, 1): 1})
    # Gamma^c_{11} = -Gamma_{111} P^{1c}
    assert conn.gamma_upper[0][0][1] == RationalPoly.const(-1, 2)
    assert not conn.gamma_upper[0][0][0]


def test_connection_must_be_symmetric(st1):
    with pytest.raises(InvalidConnectionError):
        validate_connection(st1, {(1, 1, 2): "1", (1, 2, 1): "0"})


def test_connection_string_keys(st1):
    a = validate_connection(st1, {"1,1,1": "x2"})
    b = validate_connection(st1, {(1, 1, 1): "x2"})
    assert a.gamma_upper == b.gamma_upper
