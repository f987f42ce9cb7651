from fractions import Fraction

import pytest

from mvdelta.rationals import Q01


def dyadic_grid(depth: int) -> list[Q01]:
    grid = 2**depth
    return [Q01(k, grid) for k in range(grid + 1)]


@pytest.fixture(scope="session")
def grid6() -> list[Q01]:
    return dyadic_grid(6)


@pytest.fixture(scope="session")
def grid4() -> list[Q01]:
    return dyadic_grid(4)


@pytest.fixture(scope="session")
def grid3() -> list[Q01]:
    return dyadic_grid(3)
