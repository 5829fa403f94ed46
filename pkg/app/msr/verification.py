"""
Fan-out of independent verification cases over worker threads
"""

import logging
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings

logger = logging.getLogger(__name__)


def thread_count(threads=None):
    if threads is None:
        threads = getattr(settings, "MSR_THREADS", 1)
    return max(1, int(threads))


def run_cases(check, cases, threads=None):
    """Evaluate check(case) for every case, returning (case, result) pairs
    in input order."""
    workers = thread_count(threads)
    if workers == 1 or len(cases) < 2:
        return [(case, check(case)) for case in cases]
    logger.debug("running %d cases on %d threads", len(cases), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(zip(cases, pool.map(check, cases)))
