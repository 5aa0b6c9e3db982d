"""Worker pool singleton."""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

# Global executor instance
executor: Optional[ThreadPoolExecutor] = None
pool_size: int = 1


def connect_worker_pool(workers: int) -> None:
    """Start the shared pool; a single worker means serial execution."""
    global executor, pool_size
    if workers < 1:
        raise ValueError("workers must be >= 1")
    close_worker_pool()
    pool_size = workers
    if workers > 1:
        executor = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="randlab")
    logger.info(f"✓ Worker pool ready with {workers} worker(s)")


def close_worker_pool() -> None:
    """Shut the shared pool down."""
    global executor, pool_size
    if executor is not None:
        executor.shutdown(wait=True)
        executor = None
        logger.info("✓ Worker pool closed")
    pool_size = 1


def get_worker_pool() -> Optional[ThreadPoolExecutor]:
    """Get the executor, or None when running serially."""
    return executor


def map_ordered(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Apply fn to every item; results come back in input order whatever the scheduling."""
    items = list(items)
    pool = get_worker_pool()
    if pool is None or len(items) < 2:
        return [fn(item) for item in items]
    return list(pool.map(fn, items))
