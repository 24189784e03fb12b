"""HTTP session service for interactive conversations.

In-memory sessions over the conversation engine.  Clients create a session,
read the pending explanation, and post feedback bits carrying the round
number; stale rounds are rejected so retries are safe.
"""

from __future__ import annotations

import json
import threading
import uuid
from typing import Dict, Optional

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import Response

from .conversation import ConversationEngine, Status
from .documents import (
    DocumentError,
    canonical_json,
    explanation_to_doc,
    feedback_from_doc,
    feedback_to_doc,
    load_model,
    model_from_doc,
    transcript_to_doc,
)
from .errors import FeedbackShapeError, ParseError
from .model import Model
from .selection import SearchBounds
from .syntax import format_formula, format_term, parse_prop


class Session:
    def __init__(self, sid: str, engine: ConversationEngine):
        self.id = sid
        self.engine = engine
        self.lock = threading.Lock()
        engine.next_explanation()

    def state_doc(self) -> dict:
        e = self.engine
        return {
            "id": self.id,
            "world": e.actual,
            "claim": format_formula(e.claim),
            "round": len(e.rounds),
            "status": e.status.value if e.status is not None else None,
            "pending": explanation_to_doc(e.pending) if e.pending is not None else None,
            "final_term": format_term(e.final_term) if e.final_term is not None else None,
            "history": [
                {
                    "explanation": explanation_to_doc(r.explanation),
                    "feedback": feedback_to_doc(r.feedback),
                }
                for r in e.rounds
            ],
        }


def build_app(
    model_path: Optional[str] = None, cors_origin: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="explanation conversation sessions")
    sessions: Dict[str, Session] = {}
    store_lock = threading.Lock()
    default_model: Optional[Model] = load_model(model_path) if model_path else None

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    def get_session(sid: str) -> Session:
        with store_lock:
            session = sessions.get(sid)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown session {sid}")
        return session

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.json()
        try:
            if "model" in body and body["model"] is not None:
                model = model_from_doc(body["model"])
            elif default_model is not None:
                model = default_model
            else:
                raise HTTPException(
                    status_code=400, detail="no model in request and no default model"
                )
            claim = parse_prop(body["claim"])
            world = body["world"]
            if world not in model.worlds:
                raise HTTPException(status_code=400, detail=f"unknown world {world}")
            bounds = SearchBounds.from_env(
                body.get("max_depth", 6), body.get("max_nodes", 24)
            )
            engine = ConversationEngine(
                model, world, claim, bounds, body.get("max_rounds", 10)
            )
        except (DocumentError, ParseError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        except KeyError as exc:
            raise HTTPException(status_code=400, detail=f"missing field {exc}")
        sid = uuid.uuid4().hex
        session = Session(sid, engine)
        with store_lock:
            sessions[sid] = session
        with session.lock:
            return session.state_doc()

    @app.get("/sessions/{sid}")
    def get_state(sid: str):
        session = get_session(sid)
        with session.lock:
            return session.state_doc()

    @app.post("/sessions/{sid}/feedback")
    async def post_feedback(sid: str, request: Request):
        session = get_session(sid)
        body = await request.json()
        with session.lock:
            engine = session.engine
            if "round" not in body:
                raise HTTPException(status_code=422, detail="missing round number")
            if body["round"] != len(engine.rounds):
                raise HTTPException(
                    status_code=409,
                    detail=f"stale round {body['round']}, current is {len(engine.rounds)}",
                )
            if engine.pending is None:
                raise HTTPException(status_code=409, detail="no pending explanation")
            try:
                fb = feedback_from_doc(engine.pending, body["bits"])
            except KeyError:
                raise HTTPException(status_code=422, detail="missing bits tree")
            except (FeedbackShapeError, DocumentError) as exc:
                detail = {"message": str(exc)}
                path = getattr(exc, "path", None)
                if path is not None:
                    detail["node_path"] = list(path)
                raise HTTPException(status_code=422, detail=detail)
            engine.submit_feedback(fb)
            engine.next_explanation()
            return session.state_doc()

    @app.get("/sessions/{sid}/transcript")
    def get_transcript(sid: str):
        session = get_session(sid)
        with session.lock:
            doc = transcript_to_doc(session.engine.transcript(), session.engine.m0)
        return Response(content=canonical_json(doc), media_type="application/json")

    return app
