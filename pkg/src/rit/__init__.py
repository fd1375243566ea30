"""Row Impartial Terminus: rules, Grundy analysis, CLI and HTTP service.

The game is played on the Young diagram of an integer partition.  Each
column index k of the diagram admits exactly one move, which truncates
the deepest row that still reaches column k.  The package provides the
move rules, the core/remnant decomposition that reduces the game to
Nim, winning-strategy search, exhaustive verification harnesses, and a
small web service for interactive play.
"""

from rit.partitions import Partition, PartitionError, enumerate_partitions, parse_partition, weight
from rit.rules import IllegalMoveError, RitMove, apply_move, is_terminal, legal_moves, mirror_response
from rit.decomposition import core_of, lift_nim_move, normalize_remnant, rem_of
from rit.nim import grundy, mex, misere_grundy, misere_grundy_recursive, nim_sum, nim_winning_moves
from rit.solver import (
    AnalysisReport,
    ConwayPair,
    analyze,
    best_move,
    cgh_check,
    conway_pair,
    grundy_oracle,
    respond,
    verify_theorems,
)

__all__ = [
    "AnalysisReport",
    "ConwayPair",
    "IllegalMoveError",
    "Partition",
    "PartitionError",
    "RitMove",
    "analyze",
    "apply_move",
    "best_move",
    "cgh_check",
    "conway_pair",
    "core_of",
    "enumerate_partitions",
    "grundy",
    "grundy_oracle",
    "is_terminal",
    "legal_moves",
    "lift_nim_move",
    "mex",
    "mirror_response",
    "misere_grundy",
    "misere_grundy_recursive",
    "nim_sum",
    "nim_winning_moves",
    "normalize_remnant",
    "parse_partition",
    "rem_of",
    "respond",
    "verify_theorems",
    "weight",
]

__version__ = "0.1.0"
