import pytest
from hypothesis import HealthCheck, settings

from batchgcd import generate_primes

settings.register_profile(
    "batchgcd",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("batchgcd")


@pytest.fixture(scope="session")
def prime_pool() -> list[int]:
    """Two dozen distinct 16-bit primes for hand-built semiprime sets."""
    return generate_primes(24, 16, seed=1234)
