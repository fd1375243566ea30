// DOM renderers. Pure functions of (element, data): they rebuild the
// element's children and never keep state of their own.

import type { BoardViewModel } from "./board.js";
import type { AnalysisJson, DisplayInfo, HistoryEntry, SessionState } from "./types.js";
import { winnerBanner } from "./board.js";

export function fmtParts(parts: readonly number[]): string {
  return `[${parts.join(",")}]`;
}

function fmtHeaps(heaps: readonly number[]): string {
  return `(${heaps.join(",")})`;
}

export interface BoardRenderOptions {
  disabled: boolean;
  /** 1-based row to pulse after a move; null for none. */
  changedRow?: number | null;
}

export function renderBoard(container: HTMLElement, vm: BoardViewModel, opts: BoardRenderOptions): void {
  container.replaceChildren();
  const board = document.createElement("div");
  board.className = "board";
  if (vm.rows.length === 0) {
    board.classList.add("empty");
    board.textContent = "(no boxes left)";
    container.appendChild(board);
    return;
  }
  for (const cells of vm.rows) {
    const rowEl = document.createElement("div");
    rowEl.className = "brow";
    if (cells.length > 0 && cells[0].row === opts.changedRow) {
      rowEl.classList.add("changed");
    }
    for (const cell of cells) {
      if (cell.k !== null) {
        const btn = document.createElement("button");
        btn.type = "button";
        btn.className = `box ${cell.kind} clickable`;
        btn.dataset.k = String(cell.k);
        btn.title = `play column ${cell.k}`;
        btn.textContent = String(cell.k);
        btn.disabled = opts.disabled;
        rowEl.appendChild(btn);
      } else {
        const span = document.createElement("span");
        span.className = `box ${cell.kind}`;
        rowEl.appendChild(span);
      }
    }
    board.appendChild(rowEl);
  }
  container.appendChild(board);
}

export function renderStatus(el: HTMLElement, state: SessionState | null, notice: string): void {
  let text: string;
  if (state === null) {
    text = "Start a game.";
  } else if (state.status === "finished") {
    text = winnerBanner(state);
  } else {
    const mode = state.convention === "misere" ? "misere" : "normal";
    text = `Your move (${mode} play). Position ${fmtParts(state.position)}, ${state.seq} move${state.seq === 1 ? "" : "s"} played.`;
  }
  el.textContent = notice === "" ? text : `${notice} ${text}`;
}

export function renderMoveLog(el: HTMLElement, history: readonly HistoryEntry[]): void {
  el.replaceChildren();
  for (const entry of history) {
    const li = document.createElement("li");
    const m = entry.move;
    li.textContent = `${entry.mover} k=${m.k}: removed ${m.removed} from row ${m.row}, leaving ${fmtParts(m.result)}`;
    el.appendChild(li);
  }
}

export function renderAnalysis(el: HTMLElement, display: DisplayInfo | null): void {
  if (display === null) {
    el.textContent = "";
    return;
  }
  el.textContent = [
    `core: ${fmtParts(display.core)}`,
    `rem: ${fmtHeaps(display.rem)}  normalized: ${fmtHeaps(display.rem_normalized)}`,
    `value: normal ${display.pair.normal}, misere ${display.pair.misere}`,
    `outcome: normal ${display.outcome.normal}, misere ${display.outcome.misere}`,
  ].join("\n");
}

export function renderWhatIf(el: HTMLElement, k: number | null, analysis: AnalysisJson | null): void {
  if (k === null || analysis === null) {
    el.textContent = "Pick a column to preview the position it leaves.";
    return;
  }
  el.textContent =
    `after k=${k}: ${fmtParts(analysis.position)}, ` +
    `value normal ${analysis.pair.normal} / misere ${analysis.pair.misere}, ` +
    `mover to win: normal ${analysis.outcome.normal} / misere ${analysis.outcome.misere}`;
}
