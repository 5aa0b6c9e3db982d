"""Clients module exports."""
from clients.worker_pool import close_worker_pool, connect_worker_pool, get_worker_pool, map_ordered
from clients.lifespan import lifespan

__all__ = [
    # Worker pool
    "connect_worker_pool",
    "close_worker_pool",
    "get_worker_pool",
    "map_ordered",
    # Lifespan
    "lifespan",
]
