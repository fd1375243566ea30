// Shapes of the JSON documents served under /api/v1.

export type Convention = "normal" | "misere";

export type Mover = "human" | "engine";

export interface MoveJson {
  k: number;
  row: number;
  removed: number;
  result: number[];
}

export interface HistoryEntry {
  mover: Mover;
  move: MoveJson;
}

export interface ConwayPairJson {
  normal: number;
  misere: number;
}

export interface DisplayInfo {
  core: number[];
  rem: number[];
  rem_normalized: number[];
  pair: ConwayPairJson;
  outcome: Record<string, string>;
}

export interface SessionState {
  id: string;
  convention: Convention;
  engine_first: boolean;
  start: number[];
  position: number[];
  seq: number;
  status: "in_progress" | "finished";
  winner: Mover | null;
  history: HistoryEntry[];
  legal_moves: MoveJson[];
  display: DisplayInfo;
}

export interface AnalysisJson {
  position: number[];
  convention: Convention;
  core: number[];
  rem: number[];
  rem_normalized: number[];
  pair: ConwayPairJson;
  outcome: Record<string, string>;
  winning_moves: MoveJson[];
  engine_move: MoveJson | null;
}
