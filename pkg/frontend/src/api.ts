// Thin fetch wrapper around the /api/v1 endpoints.

import type { AnalysisJson, Convention, SessionState } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

interface ErrorBody {
  error?: { code?: string; message?: string };
}

export class Api {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const headers: Record<string, string> = {};
    if (init?.body !== undefined) {
      headers["content-type"] = "application/json";
    }
    const res = await fetch(this.base + path, { ...init, headers });
    const text = await res.text();
    let body: unknown = null;
    if (text !== "") {
      try {
        body = JSON.parse(text);
      } catch {
        body = null; // non-JSON error page; fall through to status handling
      }
    }
    if (!res.ok) {
      const err = (body as ErrorBody | null)?.error;
      throw new ApiError(res.status, err?.code ?? "http_error", err?.message ?? `HTTP ${res.status}`);
    }
    return body as T;
  }

  createGame(start: number[], convention: Convention, engineFirst: boolean): Promise<SessionState> {
    return this.request<SessionState>("/api/v1/games", {
      method: "POST",
      body: JSON.stringify({ start, convention, engine_first: engineFirst }),
    });
  }

  getGame(id: string): Promise<SessionState> {
    return this.request<SessionState>(`/api/v1/games/${encodeURIComponent(id)}`);
  }

  postMove(id: string, k: number, seq: number): Promise<SessionState> {
    return this.request<SessionState>(`/api/v1/games/${encodeURIComponent(id)}/moves`, {
      method: "POST",
      body: JSON.stringify({ k, seq }),
    });
  }

  getAnalysis(partition: readonly number[], convention: Convention): Promise<AnalysisJson> {
    const params = new URLSearchParams({
      partition: JSON.stringify(partition),
      convention,
    });
    return this.request<AnalysisJson>(`/api/v1/analysis?${params.toString()}`);
  }
}
