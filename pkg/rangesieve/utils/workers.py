import logging
import os
from concurrent.futures import ThreadPoolExecutor

from rangesieve import settings

log = logging.getLogger(__name__)


def worker_count():
    """
    Worker bound from JUDGMENT_SIEVE_THREADS; 0 means one per cpu
    :return: positive int
    """
    if settings.SIEVE_THREADS > 0:
        return settings.SIEVE_THREADS
    return os.cpu_count() or 1


def map_ordered(func, items):
    """
    Applies func to every item on a bounded thread pool, returning results in item order.
    Callers derive any randomness from the item itself so the schedule never matters.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
