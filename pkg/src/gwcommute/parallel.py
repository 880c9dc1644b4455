"""Deterministic fan-out over independent work items.

Results always come back in submission order, so parallel runs are
byte-identical to sequential ones.  GW_THREADS caps the worker count.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count(n_items: int) -> int:
    cap = os.environ.get("GW_THREADS", "").strip()
    if cap:
        try:
            limit = int(cap)
        except ValueError:
            raise ValueError(f"GW_THREADS must be an integer, got {cap!r}")
        if limit < 1:
            raise ValueError("GW_THREADS must be >= 1")
    else:
        limit = os.cpu_count() or 1
    return max(1, min(limit, n_items))


def ordered_map(fn, items):
    """Map fn over items, preserving order; threads only when it can help."""
    items = list(items)
    workers = worker_count(len(items))
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
