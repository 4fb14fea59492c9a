import pytest

from fedosov import build_fedosov, standard_structure, validate_connection, validate_structure
from fedosov.sampling import rng_for

# a Poisson matrix with x-dependent inverse; Jacobi holds
TWISTED = [["0", "0", "1", "0"], ["0", "0", "0", "1"], ["-1", "0", "0", "-x1"], ["0", "-1", "x1", "0"]]


@pytest.fixture(scope="session")
def st1():
    return standard_structure(1)


@pytest.fixture(scope="session")
def st2():
    return standard_structure(2)


@pytest.fixture(scope="session")
def twisted():
    return validate_structure(TWISTED)


@pytest.fixture(scope="session")
def flat1(st1):
    return validate_connection(st1)


@pytest.fixture(scope="session")
def curved1(st1):
    return validate_connection(st1, {(1, 1, 1): "x2"})


@pytest.fixture(scope="session")
def flat_data(st1, flat1):
    return build_fedosov(st1, flat1, 6)


@pytest.fixture(scope="session")
def curved_data(st1, curved1):
    return build_fedosov(st1, curved1, 6)


@pytest.fixture
def rng():
    return rng_for(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(verdicts):
        terminalreporter.write_line(verdicts[k])
