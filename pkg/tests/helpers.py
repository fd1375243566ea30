"""Shared test oracles and exhaustive checkers.

Everything here walks the real move lists; nothing consults the
remnant formula except where a check is explicitly about remnants, so
these helpers stay independent of the closed forms they police.
"""

from __future__ import annotations

import random

from rit.decomposition import core_of, normalize_remnant, rem_of, strip_trailing_zeros
from rit.nim import nim_moves
from rit.partitions import Partition, enumerate_partitions
from rit.rules import apply_move, is_terminal, legal_moves, mirror_response
from rit.solver import best_move, respond


def P(*parts: int) -> Partition:
    return Partition(parts)


def positions_up_to(max_n: int, max_rows: int | None = None):
    for n in range(max_n + 1):
        yield from enumerate_partitions(n, max_rows)


def padded(heaps: tuple[int, ...], length: int) -> tuple[int, ...]:
    return heaps + (0,) * (length - len(heaps))


def padded_equal(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    length = max(len(a), len(b))
    return padded(a, length) == padded(b, length)


def odd_move_correspondence_violations(max_n: int) -> list[str]:
    """Odd-row moves must edit exactly their own remnant heap, keep the
    core fixed, and as a set match the Nim moves of the remnant."""
    bad: list[str] = []
    for p in positions_up_to(max_n):
        heaps = rem_of(p)
        odd_moves = [m for m in legal_moves(p) if m.odd_row]
        for m in odd_moves:
            q = apply_move(p, m)
            if core_of(q) != core_of(p):
                bad.append(f"{p}: k={m.k} changed the core {core_of(p)} -> {core_of(q)}")
                continue
            before, after = rem_of(p), rem_of(q)
            length = max(len(before), len(after))
            before, after = padded(before, length), padded(after, length)
            diffs = [i for i in range(length) if before[i] != after[i]]
            heap_slot = (m.row + 1) // 2 - 1
            if diffs != [heap_slot] or after[heap_slot] >= before[heap_slot]:
                bad.append(f"{p}: k={m.k} remnant {before} -> {after}, expected a drop in heap {heap_slot + 1}")
        odd_results = sorted(normalize_remnant(rem_of(apply_move(p, m))) for m in odd_moves)
        nim_results = sorted(
            normalize_remnant(heaps[: i - 1] + (new,) + heaps[i:]) for i, new in nim_moves(heaps)
        )
        if odd_results != nim_results:
            bad.append(f"{p}: odd-row results {odd_results} != nim-move results {nim_results}")
    return bad


def mirror_violations(max_n: int) -> list[str]:
    """Every even-row move must admit a legal mirror response on the row
    above that removes the same number of boxes and restores the remnant
    (up to the trailing zero heap that vanishes with emptied rows)."""
    bad: list[str] = []
    for p in positions_up_to(max_n):
        for m in legal_moves(p):
            if m.odd_row:
                continue
            q = apply_move(p, m)
            try:
                r = mirror_response(p, m)
                final = apply_move(q, r)
            except Exception as exc:  # noqa: BLE001 - any failure is a violation
                bad.append(f"{p}: k={m.k} mirror failed: {exc}")
                continue
            if r.row != m.row - 1 or r.removed != m.removed:
                bad.append(f"{p}: k={m.k} mirror {r} is not row {m.row - 1} removing {m.removed}")
            if strip_trailing_zeros(rem_of(final)) != strip_trailing_zeros(rem_of(p)):
                bad.append(f"{p}: k={m.k} remnant {rem_of(p)} not restored, got {rem_of(final)}")
    return bad


_PN_MEMO: dict[tuple[tuple[int, ...], str], str] = {}


def pn_outcome(p: Partition, convention: str) -> str:
    """Outcome by direct win/lose recursion over the game tree: a
    position is a next-player win iff some move leads to a
    previous-player win.  Terminal: previous wins normal play, next
    wins misere play."""
    key = (p.parts, convention)
    cached = _PN_MEMO.get(key)
    if cached is not None:
        return cached
    if is_terminal(p):
        value = "previous" if convention == "normal" else "next"
    elif any(pn_outcome(apply_move(p, m), convention) == "previous" for m in legal_moves(p)):
        value = "next"
    else:
        value = "previous"
    _PN_MEMO[key] = value
    return value


def engine_vs_random_playout(start: Partition, convention: str, rng: random.Random) -> bool:
    """Play the engine (moving first) against uniformly random moves;
    True when the engine wins under the given convention."""
    position = start
    move = best_move(position, convention)
    position = apply_move(position, move)
    last = "engine"
    while not is_terminal(position):
        opponent_move = rng.choice(legal_moves(position))
        before = position
        position = apply_move(position, opponent_move)
        last = "opponent"
        if is_terminal(position):
            break
        reply = respond(before, opponent_move, convention)
        position = apply_move(position, reply)
        last = "engine"
    took_last_box = last
    return took_last_box == "engine" if convention == "normal" else took_last_box == "opponent"
