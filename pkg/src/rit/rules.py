"""Move rules for Row Impartial Terminus.

For a partition ``p`` with longest row ``p.first``, every column index
``k`` in ``1..p.first`` admits exactly one move: let ``row`` be the
largest index ``i`` with ``p.row(i) >= k`` (rows are 1-based, top row
first); the move truncates that row to ``k - 1`` boxes and leaves all
other rows unchanged.  The game ends at the empty partition.
"""

from __future__ import annotations

from dataclasses import dataclass

from rit.partitions import Partition


class IllegalMoveError(ValueError):
    """Raised when a move does not exist in the current position."""


@dataclass(frozen=True, slots=True)
class RitMove:
    """One move, identified by its column index ``k``.

    ``row`` is the (1-based) row the move truncates and ``removed`` the
    number of boxes it deletes; both are redundant given the position
    but are carried so that moves can be logged and validated.
    """

    k: int
    row: int
    removed: int

    @property
    def parity(self) -> str:
        """``"odd"`` or ``"even"``, the parity of the truncated row."""
        return "odd" if self.row % 2 == 1 else "even"

    @property
    def odd_row(self) -> bool:
        return self.row % 2 == 1


def target_row(p: Partition, k: int) -> int:
    """The row truncated by column index ``k``: the largest ``i`` with
    ``p.row(i) >= k``.  Because parts are nonincreasing this is simply
    the number of rows of length at least ``k``."""
    if not 1 <= k <= p.first:
        raise IllegalMoveError(f"column index {k} out of range 1..{p.first} for {p}")
    return sum(1 for part in p.parts if part >= k)


def move_for_column(p: Partition, k: int) -> RitMove:
    """The unique move of ``p`` with column index ``k``."""
    row = target_row(p, k)
    return RitMove(k=k, row=row, removed=p.row(row) - (k - 1))


def legal_moves(p: Partition) -> list[RitMove]:
    """All moves of ``p``, one per column index, in ascending ``k`` order."""
    return [move_for_column(p, k) for k in range(1, p.first + 1)]


def is_terminal(p: Partition) -> bool:
    """True exactly for the empty partition, the only position without moves."""
    return not p.parts


def apply_move(p: Partition, m: RitMove) -> Partition:
    """Position after playing ``m`` in ``p``.

    The move must be internally consistent with ``p``: its row and
    removal count are re-derived from ``k`` and compared, so a move
    captured from one position cannot silently be replayed in another.
    """
    expected = move_for_column(p, m.k)
    if m != expected:
        raise IllegalMoveError(f"move {m} does not match the unique move {expected} for k={m.k} in {p}")
    parts = list(p.parts)
    parts[m.row - 1] = m.k - 1
    return Partition(parts)


def mirror_response(p: Partition, m: RitMove) -> RitMove:
    """Answer to an even-row move that restores the remnant.

    If ``m`` truncates even row ``j`` of ``p`` by ``t`` boxes, the
    response truncates row ``j - 1`` of ``q = apply_move(p, m)`` by the
    same ``t`` boxes.  Row ``j - 1`` sits above the edited row, so its
    index is unaffected even when the move emptied row ``j``.  The
    response is always legal: legality of ``m`` forces
    ``q.row(j) <= q.row(j-1) - t``.
    """
    if m.row % 2 == 1:
        raise IllegalMoveError(f"mirror response is defined for even-row moves only, got row {m.row}")
    q = apply_move(p, m)
    j = m.row - 1
    response = RitMove(k=q.row(j) - m.removed + 1, row=j, removed=m.removed)
    assert response == move_for_column(q, response.k), "mirror response must be the unique move for its column"
    return response


def move_to_json(p: Partition, m: RitMove) -> dict:
    """JSON form of a move: column, row, removal count and the
    resulting partition."""
    return {
        "k": m.k,
        "row": m.row,
        "removed": m.removed,
        "result": list(apply_move(p, m).parts),
    }
