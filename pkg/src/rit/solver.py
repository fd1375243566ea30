"""Game values, winning strategy, and exhaustive verification.

Two independent routes to the value of a position are kept separate on
purpose.  The fast route evaluates the remnant as Nim heaps
(:func:`conway_pair`).  The oracle route (:func:`grundy_oracle`) is a
literal mex recursion over the real move lists and never touches the
decomposition, so comparing the two over a bounded universe
(:func:`verify_theorems`) is a genuine cross-check rather than a
tautology.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from io import StringIO
from typing import NamedTuple

from rit.decomposition import lift_nim_move, normalize_remnant, rem_of, core_of
from rit.nim import CONVENTIONS, Convention, check_convention, mex, misere_grundy, nim_sum, nim_winning_moves
from rit.partitions import Partition, enumerate_partitions, render_partition
from rit.rules import RitMove, apply_move, is_terminal, legal_moves, mirror_response, move_for_column, move_to_json

ORACLE_DEFAULT_MAX_N = 30
ORACLE_ENV_VAR = "RIT_ORACLE_MAX_N"


class OracleBoundError(ValueError):
    """Raised when the oracle is asked about a heavier position than allowed."""


class ConwayPair(NamedTuple):
    """Grundy value under normal play paired with the misere value."""

    normal: int
    misere: int


def conway_pair(p: Partition) -> ConwayPair:
    """Both game values of ``p``, computed from its remnant heaps."""
    heaps = rem_of(p)
    return ConwayPair(nim_sum(heaps), misere_grundy(heaps))


def relevant_value(p: Partition, convention: Convention) -> int:
    """The value of ``p`` under the requested convention."""
    pair = conway_pair(p)
    return pair.normal if check_convention(convention) == "normal" else pair.misere


def outcome(p: Partition, convention: Convention) -> str:
    """``"previous"`` if the player who just moved wins with perfect
    play (value 0), else ``"next"``."""
    return "previous" if relevant_value(p, convention) == 0 else "next"


def oracle_bound() -> int:
    """Weight cap for the oracle; ``RIT_ORACLE_MAX_N`` overrides the default."""
    raw = os.environ.get(ORACLE_ENV_VAR)
    if raw is None:
        return ORACLE_DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ORACLE_ENV_VAR} must be an integer, got {raw!r}") from None


_ORACLE_MEMO: dict[Convention, dict[tuple[int, ...], int]] = {"normal": {}, "misere": {}}


def grundy_oracle(p: Partition, convention: Convention = "normal") -> int:
    """Game value of ``p`` by direct mex recursion over legal moves.

    Terminal positions get 0 under normal play and 1 under misere play.
    The recursion walks the actual game tree and is memoized per
    convention; it deliberately knows nothing about remnants.  Positions
    heavier than :func:`oracle_bound` are rejected to keep accidental
    blowups loud.
    """
    check_convention(convention)
    bound = oracle_bound()
    if p.weight > bound:
        raise OracleBoundError(
            f"oracle limited to weight <= {bound} (set {ORACLE_ENV_VAR} to raise), got weight {p.weight}"
        )
    return _oracle_value(p, convention)


def _oracle_value(p: Partition, convention: Convention) -> int:
    memo = _ORACLE_MEMO[convention]
    cached = memo.get(p.parts)
    if cached is not None:
        return cached
    if is_terminal(p):
        value = 0 if convention == "normal" else 1
    else:
        value = mex(_oracle_value(apply_move(p, m), convention) for m in legal_moves(p))
    memo[p.parts] = value
    return value


def winning_moves(p: Partition, convention: Convention = "normal") -> list[RitMove]:
    """All moves of ``p`` that hand the opponent a value-0 position,
    in ascending column order."""
    check_convention(convention)
    return [m for m in legal_moves(p) if relevant_value(apply_move(p, m), convention) == 0]


def best_move(p: Partition, convention: Convention = "normal") -> RitMove | None:
    """The engine's move for ``p``, or None exactly when ``p`` is terminal.

    Winning Nim reductions of the remnant are lifted back to the
    diagram; ties break toward the lowest heap index, then the largest
    removal.  Without a lifted winning move the engine deterministically
    takes one box off the last row.  When the remnant is all zero heaps
    that fallback is itself the winning misere reply (it leaves a single
    1-heap); in every other case it simply keeps a lost game going.
    """
    check_convention(convention)
    if is_terminal(p):
        return None
    reductions = nim_winning_moves(rem_of(p), convention)
    if reductions:
        heap_index, new_size = reductions[0]
        return lift_nim_move(p, heap_index, new_size)
    return move_for_column(p, p.parts[-1])


def respond(p: Partition, opponent_move: RitMove, convention: Convention = "normal") -> RitMove | None:
    """Engine reply after the opponent plays ``opponent_move`` in ``p``.

    From a value-0 position an even-row move is answered by the mirror
    response, which restores the remnant and with it the value;
    otherwise the reply is :func:`best_move` on the new position.
    Returns None when the opponent's move ended the game.
    """
    check_convention(convention)
    q = apply_move(p, opponent_move)
    if is_terminal(q):
        return None
    if relevant_value(p, convention) == 0 and opponent_move.row % 2 == 0:
        return mirror_response(p, opponent_move)
    return best_move(q, convention)


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the CLI and the service report about one position."""

    position: Partition
    convention: Convention
    core: Partition
    rem: tuple[int, ...]
    rem_normalized: tuple[int, ...]
    pair: ConwayPair
    outcome: dict[str, str]
    winning_moves: list[RitMove]
    engine_move: RitMove | None

    def to_json(self) -> dict:
        return {
            "position": list(self.position.parts),
            "convention": self.convention,
            "core": list(self.core.parts),
            "rem": list(self.rem),
            "rem_normalized": list(self.rem_normalized),
            "pair": {"normal": self.pair.normal, "misere": self.pair.misere},
            "outcome": dict(self.outcome),
            "winning_moves": [move_to_json(self.position, m) for m in self.winning_moves],
            "engine_move": None if self.engine_move is None else move_to_json(self.position, self.engine_move),
        }


def analyze(p: Partition, convention: Convention = "normal") -> AnalysisReport:
    """Full report for ``p``: decomposition, Conway pair, outcomes,
    winning moves and the engine's choice under ``convention``."""
    check_convention(convention)
    heaps = rem_of(p)
    return AnalysisReport(
        position=p,
        convention=convention,
        core=core_of(p),
        rem=heaps,
        rem_normalized=normalize_remnant(heaps),
        pair=conway_pair(p),
        outcome={conv: outcome(p, conv) for conv in CONVENTIONS},
        winning_moves=winning_moves(p, convention),
        engine_move=best_move(p, convention),
    )


# ---------------------------------------------------------------------------
# Exhaustive verification of the remnant reduction.


@dataclass(frozen=True)
class VerificationRow:
    n: int
    positions: int
    mismatches: int
    seconds: float


@dataclass
class VerificationReport:
    """Outcome of comparing the oracle against the remnant formula for
    every partition of weight up to ``max_n``."""

    max_n: int
    convention: str
    max_rows: int | None
    jobs: int
    rows: list[VerificationRow]
    counterexamples: list[dict]
    seconds: float

    @property
    def total_positions(self) -> int:
        return sum(row.positions for row in self.rows)

    @property
    def total_mismatches(self) -> int:
        return sum(row.mismatches for row in self.rows)

    @property
    def ok(self) -> bool:
        return self.total_mismatches == 0

    def result_table(self) -> list[tuple[int, int, int]]:
        """Timing-free content ``(n, positions, mismatches)``; identical
        runs must produce identical tables regardless of worker count."""
        return [(row.n, row.positions, row.mismatches) for row in self.rows]

    def to_json(self) -> dict:
        return {
            "max_n": self.max_n,
            "convention": self.convention,
            "max_rows": self.max_rows,
            "jobs": self.jobs,
            "total_positions": self.total_positions,
            "total_mismatches": self.total_mismatches,
            "ok": self.ok,
            "seconds": self.seconds,
            "rows": [
                {"n": r.n, "positions": r.positions, "mismatches": r.mismatches, "seconds": r.seconds}
                for r in self.rows
            ],
            "counterexamples": list(self.counterexamples),
        }

    def to_csv(self) -> str:
        out = StringIO()
        out.write("n,positions,mismatches,seconds\n")
        for r in self.rows:
            out.write(f"{r.n},{r.positions},{r.mismatches},{r.seconds:.6f}\n")
        return out.getvalue()


def _verify_weight(task: tuple[int, str, int | None]) -> tuple[int, int, list[dict], float]:
    """Check every partition of one weight; runs in a worker process."""
    n, convention, max_rows = task
    conventions = CONVENTIONS if convention == "both" else (check_convention(convention),)
    started = time.perf_counter()
    positions = 0
    bad: list[dict] = []
    for p in enumerate_partitions(n, max_rows):
        positions += 1
        heaps = rem_of(p)
        for conv in conventions:
            formula = nim_sum(heaps) if conv == "normal" else misere_grundy(heaps)
            oracle = grundy_oracle(p, conv)
            if oracle != formula:
                bad.append(
                    {
                        "n": n,
                        "partition": list(p.parts),
                        "convention": conv,
                        "formula": formula,
                        "oracle": oracle,
                    }
                )
    return n, positions, bad, time.perf_counter() - started


def verify_theorems(
    max_n: int,
    convention: str = "normal",
    max_rows: int | None = None,
    jobs: int = 1,
) -> VerificationReport:
    """Compare the oracle against the remnant formula for every
    partition of weight 0..max_n.

    ``convention`` may be ``normal``, ``misere`` or ``both``.  Work is
    split by weight across ``jobs`` worker processes, each with its own
    memo table; mismatches come back as report content, never as an
    exception.
    """
    if convention != "both":
        check_convention(convention)
    if max_n > oracle_bound():
        raise OracleBoundError(
            f"verification up to n={max_n} exceeds the oracle bound {oracle_bound()} (set {ORACLE_ENV_VAR})"
        )
    jobs = max(1, jobs)
    tasks = [(n, convention, max_rows) for n in range(max_n, -1, -1)]
    started = time.perf_counter()
    if jobs == 1:
        outcomes = [_verify_weight(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_verify_weight, tasks))
    rows = [VerificationRow(n, positions, len(bad), seconds) for n, positions, bad, seconds in outcomes]
    rows.sort(key=lambda row: row.n)
    counterexamples = sorted(
        (entry for _, _, bad, _ in outcomes for entry in bad),
        key=lambda e: (e["n"], e["partition"], e["convention"]),
    )
    return VerificationReport(
        max_n=max_n,
        convention=convention,
        max_rows=max_rows,
        jobs=jobs,
        rows=rows,
        counterexamples=counterexamples,
        seconds=time.perf_counter() - started,
    )


# ---------------------------------------------------------------------------
# Conway-Gurvich-Ho classification on a bounded universe.

SWAP_PAIRS = (ConwayPair(0, 1), ConwayPair(1, 0))

CGH_NOTE = "empirical check over all partitions of bounded weight, not a proof"

WITNESS_CAP = 5


@dataclass
class CghCheckResult:
    """One class check: pass/fail plus a deterministic sample of witnesses."""

    name: str
    passed: bool
    violations: int = 0
    witnesses: list[dict] = field(default_factory=list)

    def record(self, witness: dict) -> None:
        self.passed = False
        self.violations += 1
        if len(self.witnesses) < WITNESS_CAP:
            self.witnesses.append(witness)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "violations": self.violations,
            "witnesses": list(self.witnesses),
        }


@dataclass(frozen=True)
class CghRow:
    n: int
    positions: int
    forced_violations: int
    miserable_violations: int
    pet_violations: int
    seconds: float


@dataclass
class CghReport:
    """Empirical Conway-Gurvich-Ho classification over all partitions
    of weight up to ``max_n``."""

    max_n: int
    max_rows: int | None
    positions: int
    forced: CghCheckResult
    miserable: CghCheckResult
    pet: CghCheckResult
    rows: list[CghRow]
    seconds: float
    note: str = CGH_NOTE

    def to_json(self) -> dict:
        return {
            "max_n": self.max_n,
            "max_rows": self.max_rows,
            "positions": self.positions,
            "forced": self.forced.to_json(),
            "miserable": self.miserable.to_json(),
            "pet": self.pet.to_json(),
            "rows": [
                {
                    "n": r.n,
                    "positions": r.positions,
                    "forced_violations": r.forced_violations,
                    "miserable_violations": r.miserable_violations,
                    "pet_violations": r.pet_violations,
                    "seconds": r.seconds,
                }
                for r in self.rows
            ],
            "seconds": self.seconds,
            "note": self.note,
        }

    def to_csv(self) -> str:
        out = StringIO()
        out.write("n,positions,forced_violations,miserable_violations,pet_violations,seconds\n")
        for r in self.rows:
            out.write(
                f"{r.n},{r.positions},{r.forced_violations},{r.miserable_violations},"
                f"{r.pet_violations},{r.seconds:.6f}\n"
            )
        return out.getvalue()


def _is_pet_pair(pair: ConwayPair) -> bool:
    return pair in SWAP_PAIRS or (pair.normal == pair.misere and pair.normal >= 2)


def cgh_check(max_n: int, max_rows: int | None = None) -> CghReport:
    """Check three Conway-Gurvich-Ho properties over the bounded universe.

    forced: every move from a (0,1)-position lands on a (1,0)-position
    and vice versa.  miserable: every position is a swap position, or
    has no move to one, or has moves to both (0,1) and (1,0).  pet:
    every Conway pair is (0,1), (1,0) or (k,k) with k >= 2.  Violations
    are reported as content with the first witnesses kept.
    """
    forced = CghCheckResult(name="forced", passed=True)
    miserable = CghCheckResult(name="miserable", passed=True)
    pet = CghCheckResult(name="pet", passed=True)
    rows: list[CghRow] = []
    positions = 0
    started = time.perf_counter()
    for n in range(max_n + 1):
        n_started = time.perf_counter()
        counted = 0
        before = (forced.violations, miserable.violations, pet.violations)
        for p in enumerate_partitions(n, max_rows):
            counted += 1
            pair = conway_pair(p)
            if not _is_pet_pair(pair):
                pet.record({"n": n, "position": list(p.parts), "pair": list(pair)})
            results = [(m, conway_pair(apply_move(p, m))) for m in legal_moves(p)]
            if pair in SWAP_PAIRS:
                required = SWAP_PAIRS[1] if pair == SWAP_PAIRS[0] else SWAP_PAIRS[0]
                for m, result_pair in results:
                    if result_pair != required:
                        forced.record(
                            {
                                "n": n,
                                "position": list(p.parts),
                                "pair": list(pair),
                                "k": m.k,
                                "result": list(apply_move(p, m).parts),
                                "result_pair": list(result_pair),
                            }
                        )
            else:
                reached = {rp for _, rp in results if rp in SWAP_PAIRS}
                if len(reached) == 1:
                    miserable.record(
                        {
                            "n": n,
                            "position": list(p.parts),
                            "pair": list(pair),
                            "swap_moves_reach": sorted(list(rp) for rp in reached),
                        }
                    )
        positions += counted
        rows.append(
            CghRow(
                n=n,
                positions=counted,
                forced_violations=forced.violations - before[0],
                miserable_violations=miserable.violations - before[1],
                pet_violations=pet.violations - before[2],
                seconds=time.perf_counter() - n_started,
            )
        )
    return CghReport(
        max_n=max_n,
        max_rows=max_rows,
        positions=positions,
        forced=forced,
        miserable=miserable,
        pet=pet,
        rows=rows,
        seconds=time.perf_counter() - started,
    )


def analysis_json_text(report: AnalysisReport) -> str:
    """Canonical JSON text shared verbatim by the CLI and the service."""
    return json.dumps(report.to_json(), indent=2, sort_keys=True)


def describe_move(p: Partition, m: RitMove) -> str:
    """Human line for a move: column, row, boxes removed, result."""
    result = render_partition(apply_move(p, m))
    return f"k={m.k} (row {m.row}, remove {m.removed}) -> {result}"
