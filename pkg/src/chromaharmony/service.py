"""HTTP JSON API: stateless evaluation/generation plus incremental sessions.

Sessions live in memory with a TTL and per-id locks; mutations on one session
are serialized (a request that cannot take the lock in time gets a 409), and
expired ids turn into 404s. Run with:

    uvicorn chromaharmony.service:app --port 8789
"""

from __future__ import annotations

import os
import threading
import time

from fastapi import Body, FastAPI, HTTPException, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from . import formats
from .engine import (
    Session,
    evaluate_palette,
    session_add_color,
    session_report,
    session_undo,
    suggest_next,
)
from .generate import GenSpec, generate_line_palette
from .model import Color, HarmonyParams

DEFAULT_TTL_SECONDS = 24 * 3600.0
DEFAULT_LOCK_TIMEOUT = 5.0


class SessionStore:
    """In-memory session store with TTL expiry and per-session locks."""

    def __init__(self, ttl_seconds: float = DEFAULT_TTL_SECONDS,
                 lock_timeout: float = DEFAULT_LOCK_TIMEOUT):
        self.ttl = ttl_seconds
        self.lock_timeout = lock_timeout
        self._sessions: dict[str, tuple[Session, float]] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._table_lock = threading.Lock()

    def create(self, params: HarmonyParams) -> Session:
        session = Session(params=params)
        with self._table_lock:
            self._sessions[session.id] = (session, time.monotonic())
            self._locks[session.id] = threading.Lock()
        return session

    def get(self, session_id: str) -> Session:
        with self._table_lock:
            entry = self._sessions.get(session_id)
            if entry is not None:
                session, touched = entry
                if time.monotonic() - touched <= self.ttl:
                    self._sessions[session_id] = (session, time.monotonic())
                    return session
                del self._sessions[session_id]
                del self._locks[session_id]
        raise HTTPException(status_code=404, detail="unknown or expired session")

    def lock(self, session_id: str) -> threading.Lock:
        with self._table_lock:
            lock = self._locks.get(session_id)
        if lock is None:
            raise HTTPException(status_code=404, detail="unknown or expired session")
        return lock


def _parse_params(data) -> HarmonyParams:
    if data is not None and not isinstance(data, dict):
        raise HTTPException(status_code=400, detail="params must be an object")
    try:
        return formats.params_from_mapping(data)
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"params: {exc}") from exc


def _parse_color_field(token, where: str) -> Color:
    try:
        return formats.parse_color(token)
    except (ValueError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"{where}: {exc}") from exc


def create_app(ttl_seconds: float | None = None,
               lock_timeout: float | None = None,
               cors_origin: str | None = None) -> FastAPI:
    ttl = ttl_seconds if ttl_seconds is not None else float(
        os.environ.get("CHROMAHARMONY_TTL", DEFAULT_TTL_SECONDS))
    timeout = lock_timeout if lock_timeout is not None else float(
        os.environ.get("CHROMAHARMONY_LOCK_TIMEOUT", DEFAULT_LOCK_TIMEOUT))
    origin = cors_origin if cors_origin is not None else os.environ.get(
        "CHROMAHARMONY_CORS_ORIGIN", "*")

    app = FastAPI(title="chromaharmony", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(ttl_seconds=ttl, lock_timeout=timeout)
    app.state.store = store

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": "malformed body"})

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.post("/api/evaluate")
    def evaluate(body: dict = Body(...)):
        tokens = body.get("colors")
        if not isinstance(tokens, list):
            raise HTTPException(status_code=400, detail="colors: expected an array")
        if not tokens:
            raise HTTPException(status_code=422, detail="colors: empty list")
        params = _parse_params(body.get("params"))
        colors = [
            _parse_color_field(tok, f"colors[{i}]") for i, tok in enumerate(tokens)
        ]
        return formats.report_to_json(evaluate_palette(colors, params))

    @app.post("/api/generate")
    def generate(body: dict = Body(...)):
        params = _parse_params(body.get("params"))
        try:
            spec = GenSpec(
                r=float(body["r"]),
                phi=float(body["phi"]),
                k=int(body.get("k", 3)),
                seed=int(body.get("seed", 0)),
                pattern_override=body.get("pattern"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=f"bad request: {exc}") from exc
        return formats.gen_result_to_json(generate_line_palette(spec, params))

    @app.post("/api/sessions", status_code=201)
    def create_session(body: dict | None = Body(None)):
        params = _parse_params((body or {}).get("params"))
        session = store.create(params)
        return {"id": session.id}

    def _locked(session_id: str):
        lock = store.lock(session_id)
        if not lock.acquire(timeout=store.lock_timeout):
            raise HTTPException(status_code=409,
                                detail="session is busy with another mutation")
        return lock

    @app.post("/api/sessions/{session_id}/colors")
    def add_color(session_id: str, body: dict = Body(...)):
        session = store.get(session_id)
        color = _parse_color_field(body.get("color"), "color")
        lock = _locked(session_id)
        try:
            report = session_add_color(session, color)
        finally:
            lock.release()
        return formats.report_to_json(report)

    @app.delete("/api/sessions/{session_id}/colors/last")
    def undo_color(session_id: str):
        session = store.get(session_id)
        lock = _locked(session_id)
        try:
            try:
                report = session_undo(session)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
        finally:
            lock.release()
        return {"report": formats.report_to_json(report) if report else None}

    @app.get("/api/sessions/{session_id}/report")
    def get_report(session_id: str):
        session = store.get(session_id)
        lock = _locked(session_id)  # reads see a consistent state too
        try:
            if not session.colors:
                return {"report": None}
            return {"report": formats.report_to_json(session_report(session))}
        finally:
            lock.release()

    @app.get("/api/sessions/{session_id}/suggestions")
    def get_suggestions(session_id: str, n: int = Query(5, ge=1, le=50)):
        session = store.get(session_id)
        lock = _locked(session_id)
        try:
            if not session.colors:
                raise HTTPException(status_code=400,
                                    detail="session has no colors yet")
            return {
                "suggestions": [
                    {**formats.color_to_json(color), "score": score}
                    for color, score in suggest_next(session, n)
                ]
            }
        finally:
            lock.release()

    static_dir = os.environ.get("CHROMAHARMONY_STATIC_DIR")
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app


app = create_app()


def main() -> None:
    import uvicorn

    uvicorn.run(
        "chromaharmony.service:app",
        host=os.environ.get("CHROMAHARMONY_HOST", "127.0.0.1"),
        port=int(os.environ.get("CHROMAHARMONY_PORT", "8789")),
    )


if __name__ == "__main__":
    main()
