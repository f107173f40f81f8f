"""HTTP/JSON API for the participant protocol.

Calls on a single session are serialized with a per-session lock; distinct
sessions are independent.  Errors come back as JSON objects shaped
``{"code", "field"?, "message", "details"?}``.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .config import domain_to_dict, load_domain_config
from .domain import ContingencyTable, ReadingModel
from .engines import ENGINE_KINDS, Verdict, engine_schemas
from .errors import PhaseError, UisError, ValidationError
from .session import NoStagedTrialError, Session, SessionStore


class CreateSessionRequest(BaseModel):
    engine: str
    seed: int = 0


class AnswerRequest(BaseModel):
    verdict: str


class ProbeRequest(BaseModel):
    temperature: float
    pressure: float


class SessionManager:
    def __init__(self, store: SessionStore, table: ContingencyTable,
                 readings: ReadingModel):
        self.store = store
        self.table = table
        self.readings = readings
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def create(self, engine: str, seed: int) -> Session:
        with self._registry_lock:
            session = Session.create(engine, seed, self.table, self.readings, self.store)
            self._sessions[session.state.id] = session
            self._locks[session.state.id] = threading.Lock()
            return session

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.Lock()
            return self._locks[session_id]

    def get(self, session_id: str) -> Session:
        with self._registry_lock:
            if session_id in self._sessions:
                return self._sessions[session_id]
        session = Session.load(session_id, self.table, self.readings, self.store)
        with self._registry_lock:
            self._sessions.setdefault(session_id, session)
            return self._sessions[session_id]


def _error_response(status: int, code: str, message: str,
                    field: str | None = None, details: list | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if field:
        body["field"] = field
    if details:
        body["details"] = details
    return JSONResponse(status_code=status, content=body)


def create_app(data_dir: str | Path = "sessions",
               config_path: str | Path | None = None,
               ui_dir: str | Path | None = None) -> FastAPI:
    table, readings = load_domain_config(config_path)
    manager = SessionManager(SessionStore(data_dir), table, readings)
    app = FastAPI(title="uisbench session service")
    app.state.manager = manager

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        details = [{"field": f, "message": m} for f, m in exc.violations]
        return _error_response(400, "validation", str(exc), exc.field, details)

    @app.exception_handler(PhaseError)
    async def _phase(request: Request, exc: PhaseError):
        return _error_response(409, "wrong_phase", str(exc))

    @app.exception_handler(NoStagedTrialError)
    async def _no_trial(request: Request, exc: NoStagedTrialError):
        return _error_response(409, "no_staged_trial", str(exc))

    @app.exception_handler(KeyError)
    async def _not_found(request: Request, exc: KeyError):
        return _error_response(404, "not_found", f"unknown session {exc.args[0]!r}")

    @app.exception_handler(UisError)
    async def _uis(request: Request, exc: UisError):
        return _error_response(422, "inference_error", str(exc))

    @app.get("/engines")
    def engines():
        return {"engines": list(ENGINE_KINDS)}

    @app.get("/schemas")
    def schemas():
        return engine_schemas()

    @app.get("/domain")
    def domain():
        # Reading distributions are shown to participants as plain scales.
        doc = domain_to_dict(table, readings)
        return {"readings": doc["readings"]}

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        session = manager.create(req.engine, req.seed)
        return session.state.public_dict()

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        with manager.lock(session_id):
            return manager.get(session_id).state.public_dict()

    @app.get("/sessions/{session_id}/trial")
    def next_trial(session_id: str):
        with manager.lock(session_id):
            return manager.get(session_id).next_learning_trial()

    @app.post("/sessions/{session_id}/answer")
    def answer(session_id: str, req: AnswerRequest):
        if req.verdict not in ("M", "W"):
            raise ValidationError("verdict must be 'M' or 'W'", "verdict")
        with manager.lock(session_id):
            return manager.get(session_id).submit_answer(Verdict(req.verdict))

    @app.get("/sessions/{session_id}/system")
    def get_system(session_id: str):
        with manager.lock(session_id):
            system = manager.get(session_id).get_system()
        if system is None:
            return _error_response(404, "not_found", "no system stored yet")
        return system

    @app.put("/sessions/{session_id}/system")
    def put_system(session_id: str, system: dict = Body(...)):
        with manager.lock(session_id):
            return manager.get(session_id).put_system(system)

    @app.post("/sessions/{session_id}/probe")
    def probe(session_id: str, req: ProbeRequest):
        with manager.lock(session_id):
            return manager.get(session_id).test_case(req.temperature, req.pressure)

    @app.post("/sessions/{session_id}/finalize")
    def finalize(session_id: str):
        with manager.lock(session_id):
            return manager.get(session_id).finalize()

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
