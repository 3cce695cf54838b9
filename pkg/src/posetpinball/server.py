"""JSON-over-HTTP game sessions for the interactive board.

Routes:
  POST /games                    create a session from a config document
  GET  /games/{id}               snapshot
  GET  /games/{id}/moves         legal slides of the ball in play
  POST /games/{id}/moves         apply one slide {"edge": [upper, lower]}
  POST /games/{id}/finalize      rest the ball, place walls, release the next
  GET  /games/{id}/transcript    replayable transcript JSON

Errors are {"error": {"code": ..., "reason": ...}} with 400 for bad
configs, 404 for unknown sessions, 409 for illegal moves or early
finalize, 410 once the game is over.  Sessions live in process memory and
requests to one session are serialized with a per-session lock.
"""

from __future__ import annotations

import secrets
import threading
import time
from typing import Optional

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import pinball
from .coxeter import make_weyl
from .errors import DomainError
from .hessenberg import (
    from_hessenberg_function,
    hessenberg_betti,
    hessenberg_fixed_points,
    peterson_fixed_points,
    springer_fixed_points,
    subregular_targets,
)
from .poset import GradedPoset
from .reproduce import FIGURES, figure_setup


class CreateGameRequest(BaseModel):
    board: Optional[dict] = None
    initial: Optional[list[str]] = None
    variant: str = "basic"
    targets: Optional[list[int]] = None
    auto_finalize: bool = False
    builtin: Optional[str] = None
    n: Optional[int] = None
    lam: Optional[list[int]] = Field(None, alias="lambda")
    h: Optional[list[int]] = None
    lie_type: Optional[str] = Field(None, alias="type")
    rank: Optional[int] = None
    target: Optional[str] = None

    model_config = {"populate_by_name": True}


class MoveRequest(BaseModel):
    edge: list[str]


class Session:
    def __init__(self, sid, config, auto_finalize):
        self.id = sid
        self.config = config
        self.auto_finalize = auto_finalize
        self.state = pinball.new_game(config)
        self.lock = threading.Lock()
        self.created = time.time()
        self.updated = self.created
        if auto_finalize:
            self._drain()

    def _drain(self):
        while not self.state.finished and self.state.ball is not None:
            if pinball.legal_moves(self.state):
                break
            pinball.finalize_current(self.state)

    def touch(self):
        self.updated = time.time()


def _error(status, code, reason):
    return JSONResponse({"error": {"code": code, "reason": reason}}, status_code=status)


def _config_from_request(req: CreateGameRequest) -> pinball.GameConfig:
    variant = req.variant
    targets = tuple(req.targets) if req.targets is not None else None
    initial = list(req.initial) if req.initial is not None else None

    if req.builtin == "figure":
        if req.target not in FIGURES:
            raise DomainError(f"unknown figure target {req.target!r}")
        _, _, config, order, _ = figure_setup(req.target)
        return config
    if req.builtin is not None:
        if req.builtin == "peterson":
            group = make_weyl(req.lie_type or "A", req.rank or 3)
            points = [w for _, w in peterson_fixed_points(group)]
            if targets is None:
                from .hessenberg import peterson_space

                targets = tuple(hessenberg_betti(group, peterson_space(group)))
        elif req.builtin == "springer":
            if not req.n or not req.lam:
                raise DomainError("springer builtin needs n and lambda")
            group = make_weyl("A", req.n - 1)
            points = springer_fixed_points(req.n, tuple(req.lam), group)
            if targets is None and tuple(req.lam) == (req.n - 1, 1):
                targets = subregular_targets(req.n)
        elif req.builtin == "hessenberg":
            if not req.n or not req.h:
                raise DomainError("hessenberg builtin needs n and h")
            group = make_weyl("A", req.n - 1)
            space = from_hessenberg_function(group, req.h)
            points = hessenberg_fixed_points(group, space)
            if targets is None:
                targets = tuple(hessenberg_betti(group, space))
        else:
            raise DomainError(f"unknown builtin {req.builtin!r}")
        board = group.to_poset()
        if initial is None:
            initial = [
                group.element_id(w)
                for w in sorted(points, key=lambda w: (group.length(w), group.element_id(w)))
            ]
        return pinball.GameConfig(board, initial, variant, targets)

    if req.board is None or initial is None:
        raise DomainError("config needs either a builtin or a board plus initial")
    board = GradedPoset.from_doc(req.board)
    return pinball.GameConfig(board, initial, variant, targets)


def snapshot_doc(session: Session) -> dict:
    state = session.state
    config = session.config
    board = config.board
    by_rank = {}
    for eid in board.elements:
        by_rank.setdefault(board.rank[eid], []).append(eid)
    slots = {}
    for rank in by_rank:
        for idx, eid in enumerate(sorted(by_rank[rank])):
            slots[eid] = idx
    moves = []
    if state.ball is not None:
        moves = [[u, l] for u, l in pinball.legal_moves(state)]
    return {
        "id": session.id,
        "variant": config.variant,
        "targets": list(config.targets) if config.targets is not None else None,
        "initial": list(config.initial),
        "board": {
            "elements": [
                {"id": eid, "rank": board.rank[eid], "slot": slots[eid]}
                for eid in board.elements
            ],
            "covers": [[u, l] for u, l in board.covers],
        },
        "k": state.k,
        "ball": state.ball,
        "occupied": sorted(state.occupied),
        "rolldown": dict(state.rolldown),
        "walls": [
            {"edge": [u, l], "reason": reason}
            for (u, l), reason in sorted(state.walls.items())
        ],
        "tally": {str(r): c for r, c in sorted(state.tally.items())},
        "legal_moves": moves,
        "can_finalize": state.ball is not None and not moves,
        "finished": state.finished,
        "success": pinball.is_successful(state) if state.finished else None,
    }


def transcript_doc(session: Session) -> dict:
    state = session.state
    return {
        "config": session.config.to_doc(inline_board=True),
        "moves": [{"ball": ball, "edge": list(edge)} for ball, edge in state.moves_log],
        "rolldown": dict(state.rolldown),
        "success": pinball.is_successful(state) if state.finished else None,
    }


def create_app() -> FastAPI:
    app = FastAPI(title="posetpinball game server")
    # single-user research tool served next to a static frontend
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, Session] = {}

    def get_session(game_id):
        return sessions.get(game_id)

    @app.post("/games")
    def create_game(req: CreateGameRequest):
        try:
            config = _config_from_request(req)
            session = Session(secrets.token_hex(8), config, req.auto_finalize)
        except DomainError as err:
            return _error(400, err.code, str(err))
        sessions[session.id] = session
        return {"id": session.id, "snapshot": snapshot_doc(session)}

    @app.get("/games/{game_id}")
    def get_state(game_id: str):
        session = get_session(game_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {game_id}")
        with session.lock:
            return snapshot_doc(session)

    @app.get("/games/{game_id}/moves")
    def get_moves(game_id: str):
        session = get_session(game_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {game_id}")
        with session.lock:
            state = session.state
            if state.finished:
                return {"moves": [], "can_finalize": False, "finished": True}
            moves = [[u, l] for u, l in pinball.legal_moves(state)]
            return {"moves": moves, "can_finalize": not moves, "finished": False}

    @app.post("/games/{game_id}/moves")
    def post_move(game_id: str, req: MoveRequest):
        session = get_session(game_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {game_id}")
        with session.lock:
            state = session.state
            if state.finished:
                return _error(410, "game-over", "all balls have been dropped")
            try:
                pinball.apply_move(state, tuple(req.edge))
            except pinball.IllegalMove as err:
                return _error(409, "illegal-move", err.reason)
            except pinball.NoBallInPlay as err:
                return _error(409, err.code, str(err))
            if session.auto_finalize:
                session._drain()
            session.touch()
            return snapshot_doc(session)

    @app.post("/games/{game_id}/finalize")
    def post_finalize(game_id: str):
        session = get_session(game_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {game_id}")
        with session.lock:
            state = session.state
            if state.finished:
                return _error(410, "game-over", "all balls have been dropped")
            try:
                pinball.finalize_current(state)
            except pinball.MovesRemain as err:
                return _error(409, "moves-remain", str(err))
            except pinball.NoBallInPlay as err:
                return _error(409, err.code, str(err))
            if session.auto_finalize:
                session._drain()
            session.touch()
            return snapshot_doc(session)

    @app.get("/games/{game_id}/transcript")
    def get_transcript(game_id: str):
        session = get_session(game_id)
        if session is None:
            return _error(404, "unknown-session", f"no session {game_id}")
        with session.lock:
            return transcript_doc(session)

    return app


app = create_app()
