// Controller and DOM behaviour against a scripted in-memory server.
//
// The fake below replays the same rules as the real service (one move per
// column, engine answers with its first legal column) but exists purely so
// these tests can exercise rendering, the busy guard and the stale-refresh
// path without a network.

import { beforeEach, describe, expect, it } from "vitest";
import { ApiError } from "../src/api.js";
import { App, type ApiLike } from "../src/app.js";
import { legalMovesClient } from "../src/board.js";
import type { AnalysisJson, Convention, MoveJson, SessionState } from "../src/types.js";

function heapsOf(parts: readonly number[]): number[] {
  const heaps: number[] = [];
  for (let row = 1; row <= parts.length; row += 2) {
    heaps.push(parts[row - 1] - (row < parts.length ? parts[row] : 0));
  }
  return heaps;
}

function coreOf(parts: readonly number[]): number[] {
  const core: number[] = [];
  for (let row = 2; row <= parts.length; row += 2) {
    core.push(parts[row - 1], parts[row - 1]);
  }
  return core.filter((v) => v > 0);
}

interface FakeGame {
  id: string;
  convention: Convention;
  start: number[];
  position: number[];
  seq: number;
  status: "in_progress" | "finished";
  winner: "human" | "engine" | null;
  history: Array<{ mover: "human" | "engine"; move: MoveJson }>;
}

class FakeApi implements ApiLike {
  games = new Map<string, FakeGame>();
  nextId = 1;
  movePosts = 0;
  failNextMove: ApiError | null = null;

  private toState(g: FakeGame): SessionState {
    const rem = heapsOf(g.position);
    return JSON.parse(
      JSON.stringify({
        id: g.id,
        convention: g.convention,
        engine_first: false,
        start: g.start,
        position: g.position,
        seq: g.seq,
        status: g.status,
        winner: g.winner,
        history: g.history,
        legal_moves: g.status === "finished" ? [] : legalMovesClient(g.position),
        display: {
          core: coreOf(g.position),
          rem,
          rem_normalized: rem.filter((h) => h > 0),
          pair: { normal: 0, misere: 1 },
          outcome: { normal: "previous", misere: "next" },
        },
      }),
    );
  }

  private applyOn(g: FakeGame, mover: "human" | "engine", move: MoveJson): void {
    g.position = move.result.slice();
    g.seq += 1;
    g.history.push({ mover, move });
    if (g.position.length === 0) {
      g.status = "finished";
      g.winner = g.convention === "normal" ? mover : mover === "human" ? "engine" : "human";
    }
  }

  async createGame(start: number[], convention: Convention, _engineFirst: boolean): Promise<SessionState> {
    const g: FakeGame = {
      id: `g${this.nextId++}`,
      convention,
      start: start.slice(),
      position: start.slice(),
      seq: 0,
      status: start.length === 0 ? "finished" : "in_progress",
      winner: null,
      history: [],
    };
    this.games.set(g.id, g);
    return this.toState(g);
  }

  async getGame(id: string): Promise<SessionState> {
    const g = this.games.get(id);
    if (!g) {
      throw new ApiError(404, "unknown_game", "no such game");
    }
    return this.toState(g);
  }

  async postMove(id: string, k: number, seq: number): Promise<SessionState> {
    this.movePosts += 1;
    if (this.failNextMove) {
      const err = this.failNextMove;
      this.failNextMove = null;
      throw err;
    }
    const g = this.games.get(id);
    if (!g) {
      throw new ApiError(404, "unknown_game", "no such game");
    }
    if (g.status === "finished") {
      throw new ApiError(409, "game_finished", "game already over");
    }
    if (seq !== g.seq) {
      throw new ApiError(409, "stale_sequence", "seq mismatch");
    }
    const move = legalMovesClient(g.position).find((m) => m.k === k);
    if (!move) {
      throw new ApiError(422, "illegal_move", `no column ${k}`);
    }
    this.applyOn(g, "human", move);
    if (g.status === "in_progress") {
      this.applyOn(g, "engine", legalMovesClient(g.position)[0]);
    }
    return this.toState(g);
  }

  async getAnalysis(partition: readonly number[], convention: Convention): Promise<AnalysisJson> {
    const rem = heapsOf(partition);
    return {
      position: [...partition],
      convention,
      core: coreOf(partition),
      rem,
      rem_normalized: rem.filter((h) => h > 0),
      pair: { normal: 7, misere: 7 },
      outcome: { normal: "next", misere: "next" },
      winning_moves: [],
      engine_move: null,
    };
  }

  /** Make a move behind the app's back, as another tab would. */
  foreignMove(id: string): void {
    const g = this.games.get(id)!;
    this.applyOn(g, "human", legalMovesClient(g.position)[0]);
  }
}

function statusText(): string {
  return document.querySelector("p.status")!.textContent ?? "";
}

describe("App", () => {
  let api: FakeApi;
  let app: App;

  beforeEach(() => {
    document.body.innerHTML = '<div id="app"></div>';
    api = new FakeApi();
    app = new App(api, document.getElementById("app")!);
    app.mount();
  });

  it("renders the idle skeleton before any game", () => {
    expect(statusText()).toBe("Start a game.");
    expect(document.querySelector("form.newgame")).not.toBeNull();
    expect(document.querySelectorAll(".board .box").length).toBe(0);
  });

  it("draws the board with one button per column after newGame", async () => {
    await app.newGame([3, 1], "normal", false);
    const buttons = [...document.querySelectorAll<HTMLButtonElement>(".board button[data-k]")];
    expect(buttons.map((b) => b.dataset.k)).toEqual(["2", "3", "1"]); // reading order
    expect(document.querySelectorAll(".board .box").length).toBe(4);
    expect(statusText()).toContain("Your move (normal play)");
    expect(statusText()).toContain("[3,1]");
    const analysis = document.querySelector("pre.analysis")!.textContent ?? "";
    expect(analysis).toContain("core: [1,1]");
    expect(analysis).toContain("rem: (2)");
  });

  it("posts the clicked column and shows the engine's reply", async () => {
    await app.newGame([3, 1], "normal", false);
    document.querySelector<HTMLButtonElement>('button[data-k="3"]')!.click();
    expect(app.pending).not.toBeNull(); // click wired through the busy guard
    await app.pending;
    // human k=3 leaves [2,1]; fake engine answers k=1 leaving [2]
    expect(app.session!.position).toEqual([2]);
    expect(app.session!.seq).toBe(2);
    expect(document.querySelectorAll("ol.movelog li").length).toBe(2);
    const log = document.querySelector("ol.movelog")!.textContent ?? "";
    expect(log).toContain("human k=3: removed 1 from row 1, leaving [2,1]");
    expect(log).toContain("engine k=1: removed 1 from row 2, leaving [2]");
  });

  it("ignores clicks while a move is in flight", async () => {
    await app.newGame([3, 1], "normal", false);
    const first = app.clickColumn(3);
    const second = app.clickColumn(2);
    expect(second).toBe(first);
    await first;
    expect(api.movePosts).toBe(1);
  });

  it("refreshes from the server on a stale sequence instead of failing", async () => {
    await app.newGame([3, 1], "normal", false);
    api.foreignMove(app.session!.id);
    api.failNextMove = new ApiError(409, "stale_sequence", "seq mismatch");
    await app.clickColumn(3);
    expect(app.requestFailures).toBe(0);
    expect(app.notice).toContain("out of date");
    expect(app.session!.seq).toBe(1); // the foreign move is now visible
    expect(statusText()).toContain("refreshed");
  });

  it("counts non-conflict errors and keeps the old position", async () => {
    await app.newGame([3, 1], "normal", false);
    api.failNextMove = new ApiError(500, "boom", "server exploded");
    await app.clickColumn(3);
    expect(app.requestFailures).toBe(1);
    expect(app.session!.position).toEqual([3, 1]);
    expect(statusText()).toContain("server exploded");
  });

  it("plays a game to the banner and disables the controls", async () => {
    await app.newGame([2, 2], "misere", false);
    let guard = 0;
    while (app.session!.status === "in_progress" && guard < 20) {
      const btn = document.querySelector<HTMLButtonElement>(".board button[data-k]:not(:disabled)");
      expect(btn).not.toBeNull();
      btn!.click();
      await app.pending;
      guard += 1;
    }
    expect(app.session!.status).toBe("finished");
    expect(statusText()).toMatch(/wins|win/);
    expect(statusText()).toContain("misere play");
    expect(document.querySelector(".board.empty")).not.toBeNull();
    const select = document.querySelector<HTMLSelectElement>("select.whatif-k")!;
    expect(select.disabled).toBe(true);
  });

  it("previews a column through the what-if selector", async () => {
    await app.newGame([3, 1], "normal", false);
    const select = document.querySelector<HTMLSelectElement>("select.whatif-k")!;
    expect([...select.options].map((o) => o.value)).toEqual(["", "1", "2", "3"]);
    select.value = "2";
    select.dispatchEvent(new Event("change", { bubbles: true }));
    await new Promise((r) => setTimeout(r, 0)); // let the async handler land
    const out = document.querySelector("p.whatif-out")!.textContent ?? "";
    expect(out).toContain("after k=2: [1,1]");
    expect(out).toContain("value normal 7");
  });

  it("warns when the server's move list disagrees with the local rules", async () => {
    const tampered: ApiLike = {
      createGame: async (start, convention, engineFirst) => {
        const state = await api.createGame(start, convention, engineFirst);
        state.legal_moves = state.legal_moves.slice(1);
        return state;
      },
      getGame: (id) => api.getGame(id),
      postMove: (id, k, seq) => api.postMove(id, k, seq),
      getAnalysis: (p, c) => api.getAnalysis(p, c),
    };
    const root2 = document.createElement("div");
    document.body.appendChild(root2);
    const tamperedApp = new App(tampered, root2);
    tamperedApp.mount();
    await tamperedApp.newGame([3, 1], "normal", false);
    const warning = root2.querySelector<HTMLElement>("p.warning")!;
    expect(warning.hidden).toBe(false);
    expect(warning.textContent).toContain("server");
    // clicks still follow the server's (short) list
    expect(root2.querySelectorAll(".board button[data-k]").length).toBe(2);
  });

  it("starts a game from the form input", async () => {
    const form = document.querySelector<HTMLFormElement>("form.newgame")!;
    (form.elements.namedItem("start") as HTMLInputElement).value = "[2,1]";
    (form.elements.namedItem("convention") as HTMLSelectElement).value = "misere";
    form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    await app.pending;
    expect(app.session).not.toBeNull();
    expect(app.session!.start).toEqual([2, 1]);
    expect(app.session!.convention).toBe("misere");
  });

  it("reports an unparseable start without sending a request", async () => {
    const form = document.querySelector<HTMLFormElement>("form.newgame")!;
    (form.elements.namedItem("start") as HTMLInputElement).value = "1,3";
    form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
    expect(app.pending).toBeNull();
    expect(app.session).toBeNull();
    expect(statusText()).toContain("must not increase");
    expect(api.games.size).toBe(0);
  });
});
