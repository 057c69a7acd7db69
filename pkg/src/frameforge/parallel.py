"""Deterministic batched enumeration and thread fan-out."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

THREADS_ENV = "FRAMEFORGE_THREADS"


def resolve_threads(threads=None) -> int:
    """Explicit value, else $FRAMEFORGE_THREADS, else the CPU count."""
    if threads is None:
        env = os.environ.get(THREADS_ENV)
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def combination_batches(n: int, k: int, batch: int = 8192):
    """Yield k-subsets of range(n) in lexicographic order as (B, k) int arrays."""
    it = itertools.combinations(range(n), k)
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.intp).reshape(len(chunk), k)


def ordered_map(func, items, threads=None):
    """map() whose results come back in input order, optionally on a thread pool."""
    t = resolve_threads(threads)
    if t == 1:
        yield from map(func, items)
        return
    with ThreadPoolExecutor(max_workers=t) as pool:
        yield from pool.map(func, items)
