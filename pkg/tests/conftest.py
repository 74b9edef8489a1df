"""Shared fixtures: expensive divisors and products are built once per session."""

import pytest

from brody.divisors import Divisor, GrowthBound, construct_slow, squares
from brody.products import CanonicalProduct


@pytest.fixture(scope="session")
def squares_10k() -> Divisor:
    return squares(10_000)


@pytest.fixture(scope="session")
def squares_product(squares_10k) -> CanonicalProduct:
    return CanonicalProduct(squares_10k)


@pytest.fixture(scope="session")
def slow_divisor_30() -> Divisor:
    return construct_slow(GrowthBound.power_log_squared(1.0), 30, horizon=1e12)
