"""HTTP API for interactive play and position analysis.

Sessions live in memory behind per-session locks; every mutation
carries the client's idea of the move sequence number, and a stale
number is rejected with 409 so two tabs cannot double-play a move.
Optionally each mutation is appended to a JSON-lines snapshot file from
which sessions are rebuilt (by replay) on startup.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from rit.decomposition import decomposition_json
from rit.nim import CONVENTIONS
from rit.partitions import Partition, PartitionError, parse_partition
from rit.rules import RitMove, apply_move, is_terminal, legal_moves, move_for_column, move_to_json
from rit.solver import analysis_json_text, analyze, best_move, conway_pair, outcome, respond


class ApiError(Exception):
    """Error that renders as ``{"error": {"code", "message"}}``."""

    def __init__(self, status: int, code: str, message: str) -> None:
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


@dataclass(eq=False)
class GameSession:
    """One game between a human and the engine.

    ``history`` lists (mover, move) pairs from ``start``; replaying it
    must reproduce ``position``, which `to_json` re-validates on every
    serialization.
    """

    id: str
    convention: str
    engine_first: bool
    start: Partition
    position: Partition
    history: list[tuple[str, RitMove]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def seq(self) -> int:
        return len(self.history)

    @property
    def finished(self) -> bool:
        return is_terminal(self.position)

    def next_mover(self) -> str:
        if not self.history:
            return "engine" if self.engine_first else "human"
        return "engine" if self.history[-1][0] == "human" else "human"

    def winner(self) -> str | None:
        """Winner once finished: whoever is not to move under normal
        play, whoever is to move under misere play."""
        if not self.finished:
            return None
        stuck = self.next_mover()
        if self.convention == "normal":
            return "engine" if stuck == "human" else "human"
        return stuck

    def record(self, mover: str, move: RitMove) -> None:
        self.position = apply_move(self.position, move)
        self.history.append((mover, move))

    def to_json(self) -> dict:
        pos = self.start
        entries = []
        for mover, move in self.history:
            entries.append({"mover": mover, "move": move_to_json(pos, move)})
            pos = apply_move(pos, move)
        assert pos == self.position, "history must replay to the current position"
        pair = conway_pair(self.position)
        return {
            "id": self.id,
            "convention": self.convention,
            "engine_first": self.engine_first,
            "start": list(self.start.parts),
            "position": list(self.position.parts),
            "seq": self.seq,
            "status": "finished" if self.finished else "in_progress",
            "winner": self.winner(),
            "history": entries,
            "legal_moves": [move_to_json(self.position, m) for m in legal_moves(self.position)],
            "display": {
                **decomposition_json(self.position),
                "pair": {"normal": pair.normal, "misere": pair.misere},
                "outcome": {conv: outcome(self.position, conv) for conv in CONVENTIONS},
            },
        }


class SessionStore:
    """In-memory session map with optional JSON-lines persistence."""

    def __init__(self, snapshot_path: str | Path | None = None) -> None:
        self._sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self._snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self._snapshot_path and self._snapshot_path.exists():
            self._load()

    def add(self, session: GameSession) -> None:
        with self._lock:
            self._sessions[session.id] = session
        self.snapshot(session)

    def get(self, session_id: str) -> GameSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_game", f"no session with id {session_id!r}")
        return session

    def snapshot(self, session: GameSession) -> None:
        if self._snapshot_path is None:
            return
        state = {
            "id": session.id,
            "convention": session.convention,
            "engine_first": session.engine_first,
            "start": list(session.start.parts),
            "moves": [{"mover": mover, "k": move.k} for mover, move in session.history],
        }
        with self._lock:
            with self._snapshot_path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(state, sort_keys=True) + "\n")

    def _load(self) -> None:
        latest: dict[str, dict] = {}
        with self._snapshot_path.open(encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    state = json.loads(line)
                    latest[state["id"]] = state
        for state in latest.values():
            session = GameSession(
                id=state["id"],
                convention=state["convention"],
                engine_first=state["engine_first"],
                start=Partition(state["start"]),
                position=Partition(state["start"]),
            )
            for entry in state["moves"]:
                session.record(entry["mover"], move_for_column(session.position, entry["k"]))
            self._sessions[session.id] = session


class CreateGameRequest(BaseModel):
    start: list[int]
    convention: str = "normal"
    engine_first: bool = False


class MoveRequest(BaseModel):
    k: int
    seq: int


def _parse_start(parts: list[int]) -> Partition:
    try:
        return Partition(parts)
    except PartitionError as exc:
        raise ApiError(400, "invalid_partition", str(exc)) from None


def _check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ApiError(400, "invalid_convention", f"convention must be one of {CONVENTIONS}, got {convention!r}")
    return convention


def default_static_dir() -> Path | None:
    """The built web UI bundle, when present next to the working directory."""
    candidate = Path("frontend") / "dist"
    return candidate if candidate.is_dir() else None


def create_app(static_dir: str | Path | None = None, snapshot_path: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="rit", docs_url=None, redoc_url=None)
    store = SessionStore(snapshot_path)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(status_code=exc.status, content={"error": {"code": exc.code, "message": exc.message}})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"error": {"code": "invalid_request", "message": str(exc)}})

    @app.post("/api/v1/games", status_code=201)
    def create_game(body: CreateGameRequest) -> dict:
        start = _parse_start(body.start)
        convention = _check_convention(body.convention)
        session = GameSession(
            id=uuid.uuid4().hex[:12],
            convention=convention,
            engine_first=body.engine_first,
            start=start,
            position=start,
        )
        if body.engine_first and not is_terminal(start):
            session.record("engine", best_move(start, convention))
        store.add(session)
        return session.to_json()

    @app.get("/api/v1/games/{session_id}")
    def get_game(session_id: str) -> dict:
        return store.get(session_id).to_json()

    @app.post("/api/v1/games/{session_id}/moves")
    def submit_move(session_id: str, body: MoveRequest) -> dict:
        session = store.get(session_id)
        with session.lock:
            if session.finished:
                raise ApiError(409, "game_finished", "the game is over; no further moves are accepted")
            if body.seq != session.seq:
                raise ApiError(
                    409,
                    "stale_sequence",
                    f"expected seq {session.seq}, got {body.seq}; refresh the session state",
                )
            position = session.position
            if not 1 <= body.k <= position.first:
                raise ApiError(
                    422,
                    "illegal_move",
                    f"k must be between 1 and {position.first} for position {list(position.parts)}",
                )
            human_move = move_for_column(position, body.k)
            session.record("human", human_move)
            if not session.finished:
                session.record("engine", respond(position, human_move, session.convention))
        store.snapshot(session)
        return session.to_json()

    @app.get("/api/v1/analysis")
    def get_analysis(partition: str, convention: str = "normal") -> Response:
        _check_convention(convention)
        try:
            p = parse_partition(partition)
        except PartitionError as exc:
            raise ApiError(400, "invalid_partition", str(exc)) from None
        text = analysis_json_text(analyze(p, convention))
        return Response(content=text, media_type="application/json")

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webui")
    else:

        @app.get("/", include_in_schema=False)
        def index() -> HTMLResponse:
            return HTMLResponse(
                "<html><body><h1>rit service</h1>"
                "<p>The web UI bundle is not built; the JSON API lives under /api/v1/.</p>"
                "</body></html>"
            )

    return app


app = create_app(static_dir=default_static_dir())
