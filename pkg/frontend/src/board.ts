// Client-side board model: box grid, clickable columns, remnant overlay.
//
// The server is authoritative for legality; everything here exists so the
// page can draw a board and highlight boxes without a round trip. When the
// local computation and the server disagree, the server's move list wins
// and the view model raises a flag instead of guessing.

import type { MoveJson, SessionState } from "./types.js";

/** Parse user input like "5,4,2,1", "[5, 4, 2, 1]" or "<5 4 2 1>". */
export function parsePartitionText(text: string): number[] {
  const stripped = text.trim().replace(/^[[<⟨(]/, "").replace(/[\]>⟩)]$/, "");
  if (stripped.trim() === "") {
    return [];
  }
  const parts = stripped.split(/[\s,]+/).filter((t) => t !== "");
  const out: number[] = [];
  for (const token of parts) {
    if (!/^\d+$/.test(token)) {
      throw new Error(`not a row length: "${token}"`);
    }
    out.push(Number(token));
  }
  for (let i = 0; i < out.length; i++) {
    if (out[i] < 1) {
      throw new Error("row lengths must be at least 1");
    }
    if (i > 0 && out[i] > out[i - 1]) {
      throw new Error("row lengths must not increase downwards");
    }
  }
  return out;
}

/** Row holding the clickable box for column k: the number of rows of length >= k. */
export function targetRow(parts: readonly number[], k: number): number {
  let count = 0;
  for (const p of parts) {
    if (p >= k) {
      count += 1;
    }
  }
  return count;
}

function dropZeros(parts: readonly number[]): number[] {
  return parts.filter((p) => p > 0);
}

/**
 * All legal moves, one per column k in 1..parts[0], ascending.
 * Mirrors the server's move list field for field.
 */
export function legalMovesClient(parts: readonly number[]): MoveJson[] {
  const moves: MoveJson[] = [];
  const first = parts.length > 0 ? parts[0] : 0;
  for (let k = 1; k <= first; k++) {
    const row = targetRow(parts, k);
    const next = parts.slice();
    const removed = next[row - 1] - (k - 1);
    next[row - 1] = k - 1;
    moves.push({ k, row, removed, result: dropZeros(next) });
  }
  return moves;
}

export function movesAgree(a: readonly MoveJson[], b: readonly MoveJson[]): boolean {
  if (a.length !== b.length) {
    return false;
  }
  return a.every((m, i) => {
    const o = b[i];
    return (
      m.k === o.k &&
      m.row === o.row &&
      m.removed === o.removed &&
      m.result.length === o.result.length &&
      m.result.every((v, j) => v === o.result[j])
    );
  });
}

/**
 * Whether the box at (row, col), both 1-based, belongs to the doubled core
 * or to the leftover heap of its odd row.
 *
 * Even rows are entirely core. An odd row 2m-1 is core out to the length of
 * row 2m (zero when the row is unpaired) and remnant past it.
 */
export function boxKind(parts: readonly number[], row: number, col: number): "core" | "remnant" {
  if (row % 2 === 0) {
    return "core";
  }
  const pairLen = row < parts.length ? parts[row] : 0;
  return col <= pairLen ? "core" : "remnant";
}

/** Number of boxes drawn with the remnant overlay; equals the heap total. */
export function remnantBoxCount(parts: readonly number[]): number {
  let count = 0;
  for (let row = 1; row <= parts.length; row += 2) {
    const pairLen = row < parts.length ? parts[row] : 0;
    count += parts[row - 1] - pairLen;
  }
  return count;
}

export interface BoardCell {
  row: number;
  col: number;
  kind: "core" | "remnant";
  /** Column index when this box is the clickable one for a legal move. */
  k: number | null;
}

export interface BoardViewModel {
  rows: BoardCell[][];
  clickableCount: number;
  /** Local move computation disagreed with the server's list. */
  discrepancy: boolean;
  /** Remnant overlay does not add up to the displayed heap total. */
  remnantMismatch: boolean;
}

/**
 * Lay out the grid for a position. Clickable boxes come from serverMoves so
 * a buggy local rule can never offer an illegal click; rem is the displayed
 * heap vector used to sanity check the overlay.
 */
export function buildBoard(
  parts: readonly number[],
  serverMoves: readonly MoveJson[],
  rem: readonly number[],
): BoardViewModel {
  const clickAt = new Map<string, number>();
  for (const m of serverMoves) {
    clickAt.set(`${m.row}:${m.k}`, m.k);
  }
  const rows: BoardCell[][] = parts.map((len, i) => {
    const row = i + 1;
    const cells: BoardCell[] = [];
    for (let col = 1; col <= len; col++) {
      cells.push({
        row,
        col,
        kind: boxKind(parts, row, col),
        k: clickAt.get(`${row}:${col}`) ?? null,
      });
    }
    return cells;
  });
  const remTotal = rem.reduce((s, h) => s + h, 0);
  return {
    rows,
    clickableCount: clickAt.size,
    discrepancy: !movesAgree(legalMovesClient(parts), serverMoves),
    remnantMismatch: remnantBoxCount(parts) !== remTotal,
  };
}

/** One-line summary of a finished game; empty while play continues. */
export function winnerBanner(state: SessionState): string {
  if (state.status !== "finished" || state.winner === null) {
    return "";
  }
  const last = state.history[state.history.length - 1];
  const taker = last ? (last.mover === "engine" ? "Engine" : "You") : null;
  const verdict = state.winner === "engine" ? "Engine wins" : "You win";
  const mode = state.convention === "misere" ? "misere play" : "normal play";
  if (taker === null) {
    return `${verdict} (${mode}).`;
  }
  return `${taker} took the last box. ${verdict} (${mode}).`;
}
