import pytest

from clients import close_worker_pool, connect_worker_pool
from services.refmachine import enumerate_programs

# Enumeration sizes that keep the exhaustive suites at desk speed
SMALL_LEN = 10
MEDIUM_LEN = 13
BUDGET = 5_000


@pytest.fixture
def worker_pool(request):
    """A connected pool; the worker count comes from indirect parametrization (default 4)."""
    enumerate_programs.cache_clear()
    connect_worker_pool(getattr(request, "param", 4))
    yield
    close_worker_pool()
    enumerate_programs.cache_clear()


@pytest.fixture
def random_bits():
    from services.sources_service import prng_stream

    return lambda seed, n: prng_stream(seed, n)
