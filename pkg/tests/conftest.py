from fractions import Fraction

import pytest

from pathauction import fixture, random_network


@pytest.fixture(scope="session")
def example1():
    return fixture("example1")


@pytest.fixture(scope="session")
def fig2():
    return fixture("fig2")


@pytest.fixture(scope="session")
def fig3():
    return fixture("fig3")


@pytest.fixture(scope="session")
def xsmall():
    return fixture("xsmall")


@pytest.fixture(scope="session")
def random_nets_200():
    """The seeded random population used by the property suites."""
    return [random_network(seed) for seed in range(200)]


@pytest.fixture(scope="session")
def random_small_25():
    """Small instances (at most 5 agents) for exhaustive best-response checks."""
    return [random_network(1000 + s, node_budget=5, edge_budget=5) for s in range(25)]


@pytest.fixture(scope="session")
def unit():
    return Fraction(1)
