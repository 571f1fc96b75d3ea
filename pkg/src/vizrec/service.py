"""HTTP + JSON facade over SessionManager."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, Field

from . import errors
from .recommender import PRESET_NAMES
from .session import SessionManager
from .vizspec import parse_document

_HTTP_STATUS = {
    errors.UnknownDataset: 404,
    errors.UnknownPreset: 404,
    errors.UnknownSession: 404,
    errors.UnknownField: 404,
    errors.NotExposed: 409,
    errors.CapExceeded: 409,
    errors.InvalidPage: 400,
    errors.ParseError: 400,
    errors.TooManyAttributes: 400,
}


class CreateSessionBody(BaseModel):
    dataset: str
    algorithm: str


class SpecBody(BaseModel):
    spec: dict


class HoverBody(BaseModel):
    spec: dict
    duration_ms: int = Field(ge=0)


def create_app(manager: SessionManager) -> FastAPI:
    app = FastAPI(title="vizrec session service")
    # the browser UI is served from a different origin than the service
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(errors.VizrecError)
    async def _vizrec_error(_req: Request, exc: errors.VizrecError):
        status = _HTTP_STATUS.get(type(exc), 400)
        return JSONResponse(status_code=status,
                            content={"error": type(exc).__name__, "detail": str(exc)})

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": manager.dataset_names}

    @app.get("/algorithms")
    def list_algorithms():
        return {"algorithms": list(PRESET_NAMES)}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        session_id = manager.create_session(body.dataset, body.algorithm)
        return manager.views(session_id)

    @app.get("/sessions/{session_id}/views")
    def views(session_id: str):
        return manager.views(session_id)

    @app.post("/sessions/{session_id}/fields/{field}/toggle")
    def toggle_field(session_id: str, field: str):
        manager.toggle_field(session_id, field)
        return manager.views(session_id)

    @app.post("/sessions/{session_id}/promote")
    def promote(session_id: str, body: SpecBody):
        manager.promote(session_id, parse_document(body.spec))
        return manager.views(session_id)

    @app.post("/sessions/{session_id}/bookmark")
    def bookmark(session_id: str, body: SpecBody):
        on = manager.bookmark(session_id, parse_document(body.spec))
        return {"bookmarked": on, **manager.views(session_id)}

    @app.post("/sessions/{session_id}/hover")
    def hover(session_id: str, body: HoverBody):
        manager.hover(session_id, parse_document(body.spec), body.duration_ms)
        return {"ok": True}

    @app.post("/sessions/{session_id}/more")
    def more(session_id: str):
        manager.load_more(session_id)
        return manager.views(session_id)

    @app.get("/sessions/{session_id}/log", response_class=PlainTextResponse)
    def log(session_id: str):
        return manager.export_log(session_id)

    return app
