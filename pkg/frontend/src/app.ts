// Page controller. Owns the session state, serializes mutations (one
// request in flight at a time), and re-renders after every change.
//
// The api dependency is injected so tests can drive the controller with a
// scripted fake; production passes the fetch-backed Api.

import { ApiError } from "./api.js";
import { buildBoard, parsePartitionText } from "./board.js";
import type { AnalysisJson, Convention, SessionState } from "./types.js";
import { renderAnalysis, renderBoard, renderMoveLog, renderStatus, renderWhatIf } from "./ui.js";

export interface ApiLike {
  createGame(start: number[], convention: Convention, engineFirst: boolean): Promise<SessionState>;
  getGame(id: string): Promise<SessionState>;
  postMove(id: string, k: number, seq: number): Promise<SessionState>;
  getAnalysis(partition: readonly number[], convention: Convention): Promise<AnalysisJson>;
}

const SKELETON = `
<form class="newgame">
  <label>start <input name="start" value="5,4,2,1" size="12"></label>
  <label>rules <select name="convention">
    <option value="normal">last box wins</option>
    <option value="misere">last box loses</option>
  </select></label>
  <label><input type="checkbox" name="engineFirst"> engine first</label>
  <button type="submit">New game</button>
</form>
<p class="status"></p>
<p class="warning" hidden></p>
<div class="boardwrap"></div>
<div class="whatif">
  <label>what if k = <select class="whatif-k"></select></label>
  <p class="whatif-out"></p>
</div>
<pre class="analysis"></pre>
<ol class="movelog"></ol>
`;

export class App {
  session: SessionState | null = null;
  /** The single in-flight mutation; clicks are ignored while set. */
  pending: Promise<void> | null = null;
  /** Count of requests that came back as errors (stale refreshes excluded). */
  requestFailures = 0;
  notice = "";
  whatIfK: number | null = null;
  whatIfAnalysis: AnalysisJson | null = null;

  constructor(
    private readonly api: ApiLike,
    private readonly root: HTMLElement,
  ) {}

  mount(): void {
    this.root.innerHTML = SKELETON;
    this.root.querySelector("form.newgame")!.addEventListener("submit", (ev) => {
      ev.preventDefault();
      const form = ev.currentTarget as HTMLFormElement;
      const startText = (form.elements.namedItem("start") as HTMLInputElement).value;
      const convention = (form.elements.namedItem("convention") as HTMLSelectElement).value as Convention;
      const engineFirst = (form.elements.namedItem("engineFirst") as HTMLInputElement).checked;
      let start: number[];
      try {
        start = parsePartitionText(startText);
      } catch (e) {
        this.notice = e instanceof Error ? e.message : String(e);
        this.render();
        return;
      }
      void this.newGame(start, convention, engineFirst);
    });
    this.root.addEventListener("click", (ev) => {
      const btn = (ev.target as HTMLElement).closest("button[data-k]");
      if (btn instanceof HTMLButtonElement && !btn.disabled) {
        void this.clickColumn(Number(btn.dataset.k));
      }
    });
    this.root.querySelector("select.whatif-k")!.addEventListener("change", (ev) => {
      const value = (ev.target as HTMLSelectElement).value;
      if (value !== "") {
        void this.pickWhatIf(Number(value));
      }
    });
    this.render();
  }

  newGame(start: number[], convention: Convention, engineFirst: boolean): Promise<void> {
    if (this.pending) {
      return this.pending;
    }
    const run = async () => {
      try {
        this.session = await this.api.createGame(start, convention, engineFirst);
        this.notice = "";
      } catch (e) {
        this.requestFailures += 1;
        this.notice = e instanceof Error ? e.message : String(e);
      }
      this.whatIfK = null;
      this.whatIfAnalysis = null;
      this.render();
    };
    this.pending = run().finally(() => {
      this.pending = null;
    });
    return this.pending;
  }

  clickColumn(k: number): Promise<void> {
    if (this.pending) {
      return this.pending;
    }
    if (this.session === null || this.session.status === "finished") {
      return Promise.resolve();
    }
    const run = async () => {
      const before = this.session!;
      try {
        this.session = await this.api.postMove(before.id, k, before.seq);
        this.notice = "";
      } catch (e) {
        if (e instanceof ApiError && e.status === 409) {
          // Somebody moved under us (another tab, a replay). The server
          // refused; fetch its view and carry on from there.
          this.notice =
            e.code === "stale_sequence"
              ? "Board was out of date; refreshed from the server."
              : "Game already over; refreshed from the server.";
          try {
            this.session = await this.api.getGame(before.id);
          } catch (refreshErr) {
            this.requestFailures += 1;
            this.notice = refreshErr instanceof Error ? refreshErr.message : String(refreshErr);
          }
        } else {
          this.requestFailures += 1;
          this.notice = e instanceof Error ? e.message : String(e);
        }
      }
      this.whatIfK = null;
      this.whatIfAnalysis = null;
      this.render();
    };
    this.pending = run().finally(() => {
      this.pending = null;
    });
    return this.pending;
  }

  async pickWhatIf(k: number): Promise<void> {
    const session = this.session;
    if (session === null || session.status === "finished") {
      return;
    }
    const move = session.legal_moves.find((m) => m.k === k);
    if (move === undefined) {
      return;
    }
    try {
      const analysis = await this.api.getAnalysis(move.result, session.convention);
      if (this.session === session) {
        this.whatIfK = k;
        this.whatIfAnalysis = analysis;
      }
    } catch (e) {
      this.requestFailures += 1;
      this.whatIfK = null;
      this.whatIfAnalysis = null;
      this.notice = e instanceof Error ? e.message : String(e);
    }
    this.render();
  }

  render(): void {
    const state = this.session;
    renderStatus(this.root.querySelector("p.status")!, state, this.notice);

    const warning = this.root.querySelector("p.warning") as HTMLElement;
    const boardwrap = this.root.querySelector("div.boardwrap") as HTMLElement;
    const whatIfSelect = this.root.querySelector("select.whatif-k") as HTMLSelectElement;
    const whatIfOut = this.root.querySelector("p.whatif-out") as HTMLElement;
    const analysisEl = this.root.querySelector("pre.analysis") as HTMLElement;
    const logEl = this.root.querySelector("ol.movelog") as HTMLElement;

    if (state === null) {
      warning.hidden = true;
      boardwrap.replaceChildren();
      whatIfSelect.replaceChildren();
      whatIfSelect.disabled = true;
      renderWhatIf(whatIfOut, null, null);
      renderAnalysis(analysisEl, null);
      renderMoveLog(logEl, []);
      return;
    }

    const vm = buildBoard(state.position, state.legal_moves, state.display.rem);
    const warnings: string[] = [];
    if (vm.discrepancy) {
      warnings.push("Local move computation disagrees with the server; showing the server's moves.");
    }
    if (vm.remnantMismatch) {
      warnings.push("Remnant overlay does not match the displayed heaps.");
    }
    warning.hidden = warnings.length === 0;
    warning.textContent = warnings.join(" ");

    const finished = state.status === "finished";
    const last = state.history[state.history.length - 1];
    renderBoard(boardwrap, vm, { disabled: finished, changedRow: last ? last.move.row : null });

    whatIfSelect.replaceChildren();
    const blank = document.createElement("option");
    blank.value = "";
    blank.textContent = "-";
    whatIfSelect.appendChild(blank);
    for (const m of state.legal_moves) {
      const opt = document.createElement("option");
      opt.value = String(m.k);
      opt.textContent = String(m.k);
      whatIfSelect.appendChild(opt);
    }
    whatIfSelect.disabled = finished || state.legal_moves.length === 0;
    whatIfSelect.value = this.whatIfK === null ? "" : String(this.whatIfK);
    renderWhatIf(whatIfOut, this.whatIfK, this.whatIfAnalysis);

    renderAnalysis(analysisEl, state.display);
    renderMoveLog(logEl, state.history);
  }
}
