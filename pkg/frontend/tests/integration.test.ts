// End-to-end checks against the real engine: the Python server is spawned
// on an ephemeral port and the page logic talks to it over HTTP exactly as
// a browser would.
//
// Two properties are pinned here:
//   A. for 50 seeded random positions of weight <= 12, the client's local
//      clickable-box computation agrees with the server's move list;
//   B. a scripted session plays <5,4,2,1> to completion under both rule
//      conventions with no failed request and a banner naming the winner
//      the server reported (the engine, for this script).

import { spawn, type ChildProcess } from "node:child_process";
import { resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { Api, ApiError } from "../src/api.js";
import { App, type ApiLike } from "../src/app.js";
import { legalMovesClient } from "../src/board.js";
import type { AnalysisJson, Convention, SessionState } from "../src/types.js";

// vitest runs with the package directory as cwd; the engine lives one up
const repoRoot = resolve(process.cwd(), "..");

let proc: ChildProcess;
let base = "";
let api: Api;

function waitForPort(p: ChildProcess): Promise<number> {
  return new Promise((resolve, reject) => {
    let buf = "";
    let settled = false;
    const finish = (fn: () => void) => {
      if (!settled) {
        settled = true;
        fn();
      }
    };
    const onData = (chunk: Buffer) => {
      buf += chunk.toString();
      const m = buf.match(/running on http:\/\/127\.0\.0\.1:(\d+)/);
      if (m) {
        finish(() => resolve(Number(m[1])));
      }
    };
    p.stdout?.on("data", onData);
    p.stderr?.on("data", onData);
    p.on("exit", (code) => finish(() => reject(new Error(`server exited early (${code}):\n${buf}`))));
    p.on("error", (err) => finish(() => reject(err)));
    const timer = setTimeout(() => finish(() => reject(new Error(`server not ready:\n${buf}`))), 90_000);
    timer.unref?.();
  });
}

beforeAll(async () => {
  proc = spawn("python3", ["-m", "rit.cli", "serve", "--port", "0"], {
    cwd: repoRoot,
    stdio: ["ignore", "pipe", "pipe"],
  });
  const port = await waitForPort(proc);
  base = `http://127.0.0.1:${port}`;
  api = new Api(base);
});

afterAll(async () => {
  if (!proc) {
    return;
  }
  const gone = new Promise<void>((resolve) => proc.on("exit", () => resolve()));
  proc.kill("SIGTERM");
  const hammer = setTimeout(() => proc.kill("SIGKILL"), 5_000);
  hammer.unref?.();
  await gone;
  clearTimeout(hammer);
});

// Deterministic PRNG so the 50 sampled positions never drift between runs.
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randomPartition(rand: () => number, maxWeight: number): number[] {
  const n = 1 + Math.floor(rand() * maxWeight);
  const parts: number[] = [];
  let remaining = n;
  let prev = n;
  while (remaining > 0) {
    const cap = Math.min(prev, remaining);
    const part = 1 + Math.floor(rand() * cap);
    parts.push(part);
    prev = part;
    remaining -= part;
  }
  return parts;
}

describe("client legality against the live server", () => {
  it("agrees with the server's move list on 50 random positions", async () => {
    const rand = mulberry32(0x52495431);
    for (let i = 0; i < 50; i++) {
      const start = randomPartition(rand, 12);
      const convention: Convention = i % 2 === 0 ? "normal" : "misere";
      const state = await api.createGame(start, convention, false);
      expect(state.position).toEqual(start);
      expect(state.legal_moves).toEqual(legalMovesClient(start));
    }
  });
});

/** Counts every request the server answered with an error status. */
class CountingApi implements ApiLike {
  httpErrors = 0;

  constructor(private readonly inner: Api) {}

  private async guard<T>(p: Promise<T>): Promise<T> {
    try {
      return await p;
    } catch (e) {
      if (e instanceof ApiError) {
        this.httpErrors += 1;
      }
      throw e;
    }
  }

  createGame(start: number[], convention: Convention, engineFirst: boolean): Promise<SessionState> {
    return this.guard(this.inner.createGame(start, convention, engineFirst));
  }

  getGame(id: string): Promise<SessionState> {
    return this.guard(this.inner.getGame(id));
  }

  postMove(id: string, k: number, seq: number): Promise<SessionState> {
    return this.guard(this.inner.postMove(id, k, seq));
  }

  getAnalysis(partition: readonly number[], convention: Convention): Promise<AnalysisJson> {
    return this.guard(this.inner.getAnalysis(partition, convention));
  }
}

describe("full game round trip through the page controller", () => {
  for (const convention of ["normal", "misere"] as const) {
    it(`plays [5,4,2,1] to the winner banner (${convention} play)`, async () => {
      document.body.innerHTML = '<div id="app"></div>';
      const counting = new CountingApi(api);
      const app = new App(counting, document.getElementById("app")!);
      app.mount();
      await app.newGame([5, 4, 2, 1], convention, true);
      expect(app.session).not.toBeNull();
      expect(app.session!.history.length).toBe(1); // engine opened

      let guard = 0;
      while (app.session!.status === "in_progress" && guard < 40) {
        const btn = document.querySelector<HTMLButtonElement>(".board button[data-k]:not(:disabled)");
        expect(btn).not.toBeNull();
        btn!.click();
        await app.pending;
        guard += 1;
      }

      expect(app.session!.status).toBe("finished");
      expect(counting.httpErrors).toBe(0);
      expect(app.requestFailures).toBe(0);

      // the server's verdict obeys the convention...
      const winner = app.session!.winner;
      const last = app.session!.history[app.session!.history.length - 1];
      const expected =
        convention === "normal" ? last.mover : last.mover === "engine" ? "human" : "engine";
      expect(winner).toBe(expected);
      // ...and this particular script loses to the engine either way
      expect(winner).toBe("engine");

      const status = document.querySelector("p.status")!.textContent ?? "";
      expect(status).toContain("Engine wins");
      expect(status).toContain(convention === "misere" ? "misere play" : "normal play");
      expect(document.querySelector(".board.empty")).not.toBeNull();
    });
  }
});

describe("static bundle", () => {
  it("serves the built page at the root", async () => {
    const res = await fetch(`${base}/`);
    expect(res.status).toBe(200);
    const text = await res.text();
    expect(text).toContain("Row Impartial Terminus");
    expect(text).toContain("assets/main.js");
    const js = await fetch(`${base}/assets/main.js`);
    expect(js.status).toBe(200);
    expect(await js.text()).toContain("getElementById");
  });
});
