"""Integer partitions as immutable game positions.

A partition is stored as a nonincreasing tuple of positive parts; the
empty partition is the empty tuple.  Positions are hashable so they can
serve as memo-table keys throughout the solver.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass


class PartitionError(ValueError):
    """Raised when text or parts do not describe a valid partition."""


@dataclass(frozen=True, slots=True)
class Partition:
    """A nonincreasing sequence of positive row lengths.

    Zero parts are dropped at construction, so a freshly truncated row
    disappears from the stored value and two positions compare equal
    exactly when their Young diagrams coincide.
    """

    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()) -> None:
        parts = tuple(parts)
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise PartitionError(f"parts must be nonincreasing, got {a} before {b}")
        if parts and parts[-1] < 0:
            raise PartitionError(f"parts must be nonnegative, got {parts[-1]}")
        object.__setattr__(self, "parts", tuple(p for p in parts if p > 0))

    @property
    def weight(self) -> int:
        """Total number of boxes in the Young diagram."""
        return sum(self.parts)

    @property
    def rows(self) -> int:
        return len(self.parts)

    @property
    def first(self) -> int:
        """Length of the longest row, 0 for the empty partition."""
        return self.parts[0] if self.parts else 0

    def row(self, i: int) -> int:
        """Length of row ``i`` (1-based); 0 beyond the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return render_partition(self)


def weight(p: Partition) -> int:
    """Sum of the parts of ``p``."""
    return p.weight


def render_partition(p: Partition) -> str:
    """Bracketed text form, e.g. ``[5,4,2,1]``; the empty partition is ``[]``."""
    return "[" + ",".join(str(part) for part in p.parts) + "]"


def parse_partition(text: str) -> Partition:
    """Parse ``[a1,a2,...]`` into a partition.

    Whitespace around brackets, commas and numbers is tolerated.  The
    parts must already be nonincreasing and strictly positive; input is
    rejected rather than sorted, so the parser never guesses.
    """
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise PartitionError(f"expected a bracketed list like [5,4,2,1], got {text!r}")
    body = s[1:-1].strip()
    if not body:
        return Partition()
    parts = []
    for token in body.split(","):
        token = token.strip()
        try:
            value = int(token)
        except ValueError:
            raise PartitionError(f"malformed part {token!r} in {text!r}") from None
        if value <= 0:
            raise PartitionError(f"parts must be positive, got {value} in {text!r}")
        parts.append(value)
    for a, b in zip(parts, parts[1:]):
        if a < b:
            raise PartitionError(f"parts must be nonincreasing, got {a} before {b} in {text!r}")
    return Partition(parts)


def enumerate_partitions(n: int, max_rows: int | None = None) -> Iterator[Partition]:
    """Yield every partition of ``n`` exactly once, in decreasing
    lexicographic order of the part sequence.

    ``max_rows`` restricts the number of parts.  ``n == 0`` yields only
    the empty partition; a negative ``n`` yields nothing.
    """
    if n < 0:
        return
    rows = n if max_rows is None else min(max_rows, n)
    for parts in _descending_parts(n, n, rows):
        yield Partition(parts)


def _descending_parts(remaining: int, max_part: int, rows_left: int) -> Iterator[tuple[int, ...]]:
    if remaining == 0:
        yield ()
        return
    if rows_left <= 0 or max_part <= 0:
        return
    for head in range(min(remaining, max_part), 0, -1):
        # Remaining boxes must fit in rows_left - 1 rows of length <= head.
        if remaining - head > head * (rows_left - 1):
            continue
        for tail in _descending_parts(remaining - head, head, rows_left - 1):
            yield (head,) + tail
