"""Deterministic work distribution for the combinatorial searches.

Results are always yielded in submission order, so any max/first-hit
reduction downstream sees candidates exactly as a serial loop would; the
worker count changes throughput only, never values or witnesses.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_SENTINEL = object()


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> Iterator[R]:
    """Map fn over items, yielding results in input order.

    workers <= 1 runs serially. Otherwise a thread pool evaluates a bounded
    window ahead of the consumer (numpy SVD releases the GIL), so breaking
    out early wastes at most the in-flight window.
    """
    if workers <= 1:
        for item in items:
            yield fn(item)
        return
    items = iter(items)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        window: deque = deque()
        for item in items:
            window.append(pool.submit(fn, item))
            if len(window) >= 2 * workers:
                break
        while window:
            result = window.popleft().result()
            nxt = next(items, _SENTINEL)
            if nxt is not _SENTINEL:
                window.append(pool.submit(fn, nxt))
            yield result
