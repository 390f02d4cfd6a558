import random

import pytest

from ramcorr import sieve_primes


@pytest.fixture(scope="session")
def table_200():
    return sieve_primes(200)


@pytest.fixture(scope="session")
def table_2k():
    return sieve_primes(2000)


@pytest.fixture(scope="session")
def table_20k():
    return sieve_primes(20_000)


@pytest.fixture()
def rng():
    return random.Random(20260810)
