import pytest

from hitforge.engine import HitEngine


@pytest.fixture(scope="session")
def engine():
    """One memoizing engine for the whole run; acceptance primes it."""
    return HitEngine()
