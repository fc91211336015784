from fractions import Fraction as F

import pytest

from wellpoised.arrangement import ArrangementSpec
from wellpoised.polyalg import PolynomialIdeal, parse_polynomial
from wellpoised.polyhedra import RationalCone, SigmaPolyhedron
from wellpoised.semicanonical import PolyhedralDivisorSpec

RAY = RationalCone(1, [[1]])


def half_lines(*starts):
    return [SigmaPolyhedron(1, [[F(s)]], RAY) for s in starts]


def elliptic():
    base = PolynomialIdeal(["t2^2 - t1^3 - t1"], ("t1", "t2"))
    return PolyhedralDivisorSpec(base, half_lines("6/5", "-1/2", "-2/3"), name="elliptic")


def e8_arrangement():
    V = ("x", "y")
    forms = [parse_polynomial(f, V) for f in ("x", "y", "x + y")]
    return ArrangementSpec(1, forms, half_lines("6/5", "-1/2", "-2/3"), name="E8")


def generic_planes():
    V = ("x", "y", "z")
    forms = [parse_polynomial(f, V) for f in ("x", "y", "z", "x + y + z", "x + 2y + 3z")]
    return ArrangementSpec(2, forms, half_lines("1", "0", "0", "0", "-1/2"), name="generic")


@pytest.fixture(scope="session")
def elliptic_spec():
    return elliptic()


@pytest.fixture(scope="session")
def elliptic_pres(elliptic_spec):
    from wellpoised.semicanonical import semicanonical_presentation
    return semicanonical_presentation(elliptic_spec)


@pytest.fixture(scope="session")
def e8():
    return e8_arrangement()


# acceptance summary lines, printed at the end of the run

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE_KEY]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
