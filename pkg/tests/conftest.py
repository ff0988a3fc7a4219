import numpy as np
import pytest

from credal import (
    UtilityMatrix,
    Variable,
    coin_space,
    make_distribution,
    product_space,
    simple_space,
)


@pytest.fixture
def die6():
    return simple_space("1", "2", "3", "4", "5", "6")


@pytest.fixture
def two_tosses():
    return coin_space(2)


@pytest.fixture
def xyz_space():
    return product_space(
        Variable("X", ("x", "~x")),
        Variable("Y", ("y", "~y")),
        Variable("Z", ("z", "~z")),
    )


@pytest.fixture
def xyz_tables(xyz_space):
    """The two conditionally independent joints; the first is the printed
    table that undersums by 0.02 and is kept verbatim."""
    p = make_distribution(
        xyz_space,
        [0.1, 0.1, 0.03, 0.06, 0.1, 0.1, 0.16, 0.33],
        require_normalized=False,
    )
    p_prime = make_distribution(xyz_space, [0.05, 0.05, 0.1, 0.1, 0.15, 0.15, 0.2, 0.2])
    return p, p_prime


@pytest.fixture
def states3():
    return simple_space("c1", "c2", "c3")


@pytest.fixture
def matrix3(states3):
    return UtilityMatrix(
        ("a1", "a2", "a3"), states3, [[3, 3, 4], [2.5, 3.5, 5], [1, 5, 4]]
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
