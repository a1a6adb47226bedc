"""Shared fixtures for the test suite."""

import pytest

from helpers import simple_sieve


@pytest.fixture(scope="session")
def primes_100k() -> list[int]:
    return simple_sieve(100_000)


@pytest.fixture(scope="session")
def prime_set_100k(primes_100k) -> set[int]:
    return set(primes_100k)
