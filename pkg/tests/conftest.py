import pytest

from knottab import Sieve, build_table


@pytest.fixture(scope="session")
def table7():
    return build_table(7)


@pytest.fixture(scope="session")
def sieve_128():
    return Sieve(128)
