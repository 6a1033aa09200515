# src/core/concurrency.py
"""
Thread-pool fan-out for independent work items.

Simulation segments, sweep points and table cells are dispatched through
asyncio.to_thread behind a semaphore. Results come back in input order, so
the outcome never depends on how many workers ran them.
"""

from __future__ import annotations

import asyncio
from typing import Callable, Sequence, TypeVar

import numpy as np

from Singletons import Logger

T = TypeVar("T")
R = TypeVar("R")

logger = Logger()


async def gather_in_threads(fn: Callable[[T], R], items: Sequence[T], max_workers: int = 1) -> list[R]:
    """Run fn over items in worker threads, at most max_workers at a time."""
    semaphore = asyncio.Semaphore(max(1, int(max_workers)))

    async def _one(item: T) -> R:
        async with semaphore:
            return await asyncio.to_thread(fn, item)

    return list(await asyncio.gather(*(_one(item) for item in items)))


def run_parallel(fn: Callable[[T], R], items: Sequence[T], max_workers: int = 1) -> list[R]:
    """
    Synchronous entry point for gather_in_threads.

    Must not be called from inside a running event loop; async callers await
    gather_in_threads or push the whole call into asyncio.to_thread.
    """
    items = list(items)
    if max_workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    logger.debug(f"Dispatching {len(items)} items over {max_workers} workers")
    return asyncio.run(gather_in_threads(fn, items, max_workers))


def spawn_generators(seed: int, n: int) -> list[np.random.Generator]:
    """Independent generators derived from one master seed."""
    return [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(n)]


def derive_seeds(seed: int, n: int) -> list[int]:
    """Independent integer seeds for callers that take a plain seed."""
    return [int(child.generate_state(1, dtype=np.uint32)[0]) for child in np.random.SeedSequence(seed).spawn(n)]
