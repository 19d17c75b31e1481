"""Process-wide defaults read from the environment.

``SIMUNIV_SEARCH_LIMIT``  upper bound on candidate counts for exhaustive searches
``SIMUNIV_THREADS``       worker threads for per-target scans (1 = serial)
"""
import os
from concurrent.futures import ThreadPoolExecutor

DEFAULT_SEARCH_LIMIT = 200_000


def search_limit(override=None):
    if override is not None:
        return int(override)
    return int(os.environ.get("SIMUNIV_SEARCH_LIMIT", DEFAULT_SEARCH_LIMIT))


def thread_count(override=None):
    if override is not None:
        return max(1, int(override))
    return max(1, int(os.environ.get("SIMUNIV_THREADS", "1")))


def pmap(fn, items, threads=None):
    """Ordered map; results come back in input order whatever the thread count."""
    items = list(items)
    n = thread_count(threads)
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
