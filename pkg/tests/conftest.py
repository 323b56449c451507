import pytest

from taucospond import Field, build_inventory, load_fixture, parse_algebra, projective_rep, injective_rep
from taucospond import Representation

# brute-force bound that reaches every indecomposable of the nilpotent fixture
N3_BOUND = 2


@pytest.fixture(scope="session")
def a2():
    return load_fixture("a2")


@pytest.fixture(scope="session")
def n3():
    return load_fixture("n3")


@pytest.fixture(scope="session")
def a3():
    return load_fixture("a3")


@pytest.fixture(scope="session")
def k1():
    return load_fixture("k")


@pytest.fixture(scope="session")
def kronecker():
    return parse_algebra("name Kr; vertices 1 2; arrows a:1->2 b:1->2")


def fixture_inventory(name, field=None):
    alg = load_fixture(name, field=field)
    if name == "n3":
        return build_inventory(alg, N3_BOUND, assert_complete=True)
    return build_inventory(alg)


@pytest.fixture(scope="session")
def inventories():
    return {name: fixture_inventory(name) for name in ("a2", "n3", "a3", "k")}


class A2Modules:
    def __init__(self, alg):
        self.alg = alg
        self.S1 = Representation.simple(alg, 0)
        self.S2 = Representation.simple(alg, 1)
        self.P1 = projective_rep(alg, 0)
        self.I2 = injective_rep(alg, 1)


@pytest.fixture(scope="session")
def m2(a2):
    return A2Modules(a2)


@pytest.fixture(scope="session")
def f2():
    return Field(2)
