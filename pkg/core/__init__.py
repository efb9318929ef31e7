"""
Core module initialization
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import config

logger = logging.getLogger(__name__)

# Global instances
_worker_pool: Optional[ThreadPoolExecutor] = None
_pool_lock = threading.Lock()


def init_worker_pool(workers: Optional[int] = None) -> ThreadPoolExecutor:
    """Initialize the shared worker pool sized by CHAR1_THREADS."""
    global _worker_pool
    with _pool_lock:
        if _worker_pool is None:
            size = workers or config.CHAR1_THREADS
            _worker_pool = ThreadPoolExecutor(max_workers=size, thread_name_prefix="char1")
            logger.info(f"Worker pool initialized with {size} threads")
        return _worker_pool


def get_worker_pool() -> ThreadPoolExecutor:
    """Get the shared worker pool, creating it on first use."""
    return _worker_pool or init_worker_pool()


def shutdown_worker_pool() -> None:
    global _worker_pool
    with _pool_lock:
        if _worker_pool is not None:
            _worker_pool.shutdown(wait=True)
            _worker_pool = None
            logger.info("Worker pool shut down")
