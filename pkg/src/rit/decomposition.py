"""Core/remnant decomposition of a position.

Writing ``r`` for the number of rows of a partition ``p``:

* ``core_of(p)`` keeps the even-indexed rows, doubled:
  ``(p2, p2, p4, p4, ...)`` up to row ``2 * (r // 2)``.
* ``rem_of(p)`` is the tuple of row differences
  ``(p1 - p2, p3 - p4, ...)`` of length ``ceil(r / 2)``, reading rows
  beyond ``r`` as 0.

The remnant, played as Nim heaps, carries the whole game value; the
core is the inert rest of the diagram.  Remnants are positional: heap
``j`` belongs to odd row ``2j - 1``.  A trailing zero heap appears or
disappears as the last rows do, so comparisons across moves should
either strip trailing zeros or use :func:`normalize_remnant`, which
also sorts and therefore treats the remnant as a Nim multiset.
"""

from __future__ import annotations

from rit.partitions import Partition
from rit.rules import RitMove, move_for_column

Remnant = tuple[int, ...]


def core_of(p: Partition) -> Partition:
    """The paired core ``(p2, p2, p4, p4, ...)`` of ``p``."""
    doubled = []
    for i in range(2, len(p.parts) + 1, 2):
        doubled += [p.parts[i - 1], p.parts[i - 1]]
    return Partition(doubled)


def rem_of(p: Partition) -> Remnant:
    """The remnant heap tuple ``(p1 - p2, p3 - p4, ...)`` of ``p``."""
    return tuple(p.row(i) - p.row(i + 1) for i in range(1, len(p.parts) + 1, 2))


def normalize_remnant(heaps: Remnant) -> Remnant:
    """Drop zero heaps and sort descending: the remnant as a Nim multiset."""
    return tuple(sorted((h for h in heaps if h > 0), reverse=True))


def strip_trailing_zeros(heaps: Remnant) -> Remnant:
    """Remove trailing zero heaps while keeping interior positions."""
    end = len(heaps)
    while end > 0 and heaps[end - 1] == 0:
        end -= 1
    return heaps[:end]


def lift_nim_move(p: Partition, heap_index: int, new_size: int) -> RitMove:
    """Realize the Nim move ``heaps[heap_index] -> new_size`` as a move of ``p``.

    ``heap_index`` is 1-based into ``rem_of(p)``; the lifted move
    truncates odd row ``2 * heap_index - 1`` and only changes that one
    heap.  ``new_size`` must be strictly smaller than the current heap.
    """
    heaps = rem_of(p)
    if not 1 <= heap_index <= len(heaps):
        raise ValueError(f"heap index {heap_index} out of range 1..{len(heaps)} for {p}")
    old = heaps[heap_index - 1]
    if not 0 <= new_size < old:
        raise ValueError(f"new size {new_size} must satisfy 0 <= new < {old} for heap {heap_index} of {p}")
    row = 2 * heap_index - 1
    removed = old - new_size
    move = RitMove(k=p.row(row) - removed + 1, row=row, removed=removed)
    assert move == move_for_column(p, move.k), "lifted move must be the unique move for its column"
    return move


def decomposition_json(p: Partition) -> dict:
    """JSON form of the decomposition: core, raw remnant, and the
    remnant as a normalized Nim multiset."""
    heaps = rem_of(p)
    return {
        "core": list(core_of(p).parts),
        "rem": list(heaps),
        "rem_normalized": list(normalize_remnant(heaps)),
    }
