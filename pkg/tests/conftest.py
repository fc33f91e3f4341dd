import pytest

from lcrit import primesums as ps


@pytest.fixture(scope="session")
def tbl():
    return ps.sieve(10**6)


@pytest.fixture(scope="session")
def tbl_small():
    return ps.sieve(10**4)
