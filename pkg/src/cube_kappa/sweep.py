"""Deterministic chunking of fixed-size subset sweeps and a thread-pool runner."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from math import comb
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T")

CHUNK_SIZE = 1 << 16


def default_workers() -> int:
    return os.cpu_count() or 1


def chunks(size: int, s: int, chunk_size: int = CHUNK_SIZE) -> list[tuple[int, int]]:
    """``(start_rank, count)`` ranges covering all ``s``-subsets of ``range(size)``.

    The partition depends only on ``(size, s, chunk_size)``, never on the
    number of workers, so merged results are reproducible.
    """
    total = comb(size, s)
    return [(start, min(chunk_size, total - start)) for start in range(0, total, chunk_size)]


def run_ordered(fn: Callable[[T], object], items: Sequence[T], workers: int) -> list:
    """``[fn(x) for x in items]``, computed on up to ``workers`` threads."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def waves(items: Sequence[T], width: int) -> Iterator[Sequence[T]]:
    for i in range(0, len(items), width):
        yield items[i : i + width]


def unrank_lex(rank: int, size: int, s: int) -> list[int]:
    """The ``rank``-th ``s``-subset of ``range(size)`` in lexicographic order."""
    out = []
    x = 0
    for i in range(s):
        while comb(size - x - 1, s - i - 1) <= rank:
            rank -= comb(size - x - 1, s - i - 1)
            x += 1
        out.append(x)
        x += 1
    return out


def rank_lex(members: Iterable[int], size: int) -> int:
    members = sorted(members)
    s = len(members)
    rank = 0
    prev = -1
    for i, c in enumerate(members):
        for x in range(prev + 1, c):
            rank += comb(size - x - 1, s - i - 1)
        prev = c
    return rank
