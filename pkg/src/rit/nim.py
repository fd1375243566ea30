"""Nim heaps: mex, nim-sum, and Grundy values under both conventions.

A Nim position is any finite sequence of nonnegative heap sizes; zero
heaps are inert and heap order never matters.  Normal play assigns the
nim-sum; misere play agrees whenever some heap has size at least 2 and
flips the low bit otherwise.  The closed forms are backed by literal
memoized recursions (:func:`grundy_recursive` and
:func:`misere_grundy_recursive`) so the two routes can be compared
exhaustively in tests.
"""

from __future__ import annotations

from collections.abc import Iterable
from functools import lru_cache, reduce
from typing import Literal

Heaps = tuple[int, ...]
Convention = Literal["normal", "misere"]

CONVENTIONS = ("normal", "misere")


def check_convention(convention: str) -> Convention:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    return convention  # type: ignore[return-value]


def mex(values: Iterable[int]) -> int:
    """Minimal excludant: the least nonnegative integer not in ``values``."""
    present = set(values)
    v = 0
    while v in present:
        v += 1
    return v


def nim_sum(values: Iterable[int]) -> int:
    """Bitwise XOR of ``values``; 0 for the empty sequence."""
    return reduce(lambda a, b: a ^ b, values, 0)


def grundy(heaps: Iterable[int]) -> int:
    """Normal-play Grundy value of a Nim position: its nim-sum."""
    return nim_sum(heaps)


def misere_grundy(heaps: Iterable[int]) -> int:
    """Misere Grundy value of a Nim position.

    Equal to the nim-sum when some heap is 2 or larger; with only heaps
    of size at most 1 the value is the nim-sum with the low bit
    flipped, so the empty position gets 1.
    """
    heaps = tuple(heaps)
    if any(h >= 2 for h in heaps):
        return nim_sum(heaps)
    return nim_sum(heaps) ^ 1

def _as_multiset(heaps: Iterable[int]) -> Heaps:
    heaps = tuple(heaps)
    if any(h < 0 for h in heaps):
        raise ValueError(f"heap sizes must be nonnegative, got {heaps}")
    return tuple(sorted((h for h in heaps if h > 0), reverse=True))


def nim_moves(heaps: Heaps) -> list[tuple[int, int]]:
    """All single-heap reductions ``(heap_index, new_size)`` of ``heaps``,
    1-based, ordered by heap index then new size ascending."""
    return [(i, new) for i, h in enumerate(heaps, start=1) for new in range(h)]


def _reduce_heap(heaps: Heaps, heap_index: int, new_size: int) -> Heaps:
    return heaps[: heap_index - 1] + (new_size,) + heaps[heap_index:]


@lru_cache(maxsize=None)
def _grundy_rec(heaps: Heaps) -> int:
    return mex(_grundy_rec(_as_multiset(_reduce_heap(heaps, i, new))) for i, new in nim_moves(heaps))


@lru_cache(maxsize=None)
def _misere_grundy_rec(heaps: Heaps) -> int:
    if not heaps:
        return 1
    return mex(_misere_grundy_rec(_as_multiset(_reduce_heap(heaps, i, new))) for i, new in nim_moves(heaps))


def grundy_recursive(heaps: Iterable[int]) -> int:
    """Normal-play Grundy value by the literal mex recursion (memoized)."""
    return _grundy_rec(_as_multiset(heaps))


def misere_grundy_recursive(heaps: Iterable[int]) -> int:
    """Misere Grundy value by the literal mex recursion with terminal
    positions assigned 1 (memoized)."""
    return _misere_grundy_rec(_as_multiset(heaps))


def nim_winning_moves(heaps: Iterable[int], convention: Convention = "normal") -> list[tuple[int, int]]:
    """All reductions ``(heap_index, new_size)`` after which the
    position's Grundy value under ``convention`` is 0.

    The list is ordered by heap index, then new size ascending, and is
    empty exactly when the position already has value 0 or admits no
    move at all.
    """
    check_convention(convention)
    value = nim_sum if convention == "normal" else misere_grundy
    heaps = tuple(heaps)
    return [(i, new) for i, new in nim_moves(heaps) if value(_reduce_heap(heaps, i, new)) == 0]
