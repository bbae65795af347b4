import pytest

from ybgroup import perm as P
from ybgroup.census import enumerate_solutions
from ybgroup.solution import permutation_solution, trivial_solution, validate

NONRET4_F = ["(1,2,4,3)", "(1,3,4,2)", "(2,3)", "(1,4)"]
NONRET4_G = ["(1,2,3,4)", "(1,4,3,2)", "(1,3)", "(2,4)"]


def cyc_tables(n, cycs):
    return [P.to_one_line(P.parse_cycles(n, c)) for c in cycs]


@pytest.fixture(scope="session")
def nonret4():
    return validate(cyc_tables(4, NONRET4_F), cyc_tables(4, NONRET4_G))


@pytest.fixture(scope="session")
def klein():
    return validate([[2, 1], [2, 1]])


@pytest.fixture(scope="session")
def trivial2():
    return trivial_solution(2)


@pytest.fixture(scope="session")
def trivial3():
    return trivial_solution(3)


@pytest.fixture(scope="session")
def perm3():
    return permutation_solution(3)


@pytest.fixture(scope="session")
def perm4():
    return permutation_solution(4)


@pytest.fixture(scope="session")
def census():
    return {n: enumerate_solutions(n) for n in (1, 2, 3, 4)}


@pytest.fixture(scope="session")
def census_solutions(census):
    return [e.solution for n in sorted(census) for e in census[n]]
