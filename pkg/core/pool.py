import logging
import os
from concurrent.futures import ProcessPoolExecutor

import django

logger = logging.getLogger(__name__)

# read-only payload installed in each worker by _init_worker
_shared = None


def available_workers():
    return os.cpu_count() or 1


def segments(lo, hi, size):
    """Split [lo, hi) into consecutive half-open segments of at most ``size``."""
    bounds = []
    start = lo
    while start < hi:
        stop = min(start + size, hi)
        bounds.append((start, stop))
        start = stop
    return bounds


def _init_worker(shared):
    global _shared
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'eklab.settings')
    django.setup()
    _shared = shared


def _call(func, item):
    return func(item, _shared)


def map_ordered(func, items, workers=1, shared=None):
    """Apply ``func(item, shared)`` to every item, results in submission order.

    ``func`` must be a module-level function so it can be pickled. With
    ``workers > 1`` the work runs in a process pool; ``shared`` is sent to
    each worker once, not once per item.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item, shared) for item in items]

    workers = min(workers, len(items))
    logger.debug("running %d work units on %d workers", len(items), workers)
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(shared,)) as executor:
        futures = [executor.submit(_call, func, item) for item in items]
        return [future.result() for future in futures]
