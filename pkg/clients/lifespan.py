"""Lifespan context manager for shared clients."""
from contextlib import contextmanager
import logging

from clients.worker_pool import close_worker_pool, connect_worker_pool

logger = logging.getLogger(__name__)


@contextmanager
def lifespan(workers: int = 1):
    """
    Open the worker pool for the duration of a run and close it afterwards.

    Results never depend on the worker count; the pool only changes scheduling.
    """
    logger.debug("Starting run...")
    connect_worker_pool(workers)
    try:
        yield
    finally:
        close_worker_pool()
        logger.debug("Run finished")
