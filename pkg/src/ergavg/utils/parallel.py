"""
Ordered worker pools
====================

Work is split into fixed chunks (independent of the worker count) and the
partial results are merged in chunk order, so sums are bit-identical
whatever ``ERGAVG_WORKERS`` says.

.. autosummary::

    ~worker_count
    ~ordered_map
    ~ordered_sum
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

WORKERS_ENV = "ERGAVG_WORKERS"


def worker_count(env_var=WORKERS_ENV, default=1):
    """Number of worker threads requested in the environment."""
    raw = os.environ.get(env_var)
    if raw is None:
        return default
    try:
        workers = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer).", env_var, raw)
        return default
    return max(1, workers)


def ordered_map(func, items, workers=None):
    """``[func(item) for item in items]``, possibly on a thread pool."""
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("ordered_map: %d chunks on %d workers", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def ordered_sum(parts, start=0):
    """Sum ``parts`` left to right, starting from ``start``."""
    total = start
    for part in parts:
        total = total + part
    return total
