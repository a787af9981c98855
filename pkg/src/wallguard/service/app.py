"""HTTP wiring around ModerationService.

Manager routes (queue, decisions, blocking, rules, retrain, wall
creation) require the static bearer token from the service config.
Posting and reading are open.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Response
from pydantic import BaseModel, Field

from ..errors import (
    CorpusTooSmall,
    DuplicateId,
    EmptyTrainingSet,
    InvalidPolicy,
    MalformedXml,
    MessageNotFound,
    NotPending,
    NotPublished,
    UnknownClass,
    UserNotFound,
    WallguardError,
    WallNotFound,
)
from ..labels import ClassLabel
from ..policy import UserProfile
from .config import policy_from_json, policy_to_json
from .core import ModerationService, StoredMessage, Wall

_STATUS_BY_ERROR: list[tuple[type, int]] = [
    (WallNotFound, 404),
    (MessageNotFound, 404),
    (UserNotFound, 404),
    (NotPending, 409),
    (NotPublished, 409),
    (DuplicateId, 409),
    (InvalidPolicy, 422),
    (MalformedXml, 400),
    (UnknownClass, 400),
    (CorpusTooSmall, 400),
    (EmptyTrainingSet, 400),
]


class PostMessageBody(BaseModel):
    author_id: str = Field(min_length=1)
    text: str


class ModerationBody(BaseModel):
    action: str


class BlockBody(BaseModel):
    blocked: bool


class RulesBody(BaseModel):
    tau: float
    enabled_classes: list[str]
    rho: float
    n: int


class RetrainBody(BaseModel):
    corpus_path: str


class CreateWallBody(BaseModel):
    wall_id: str = Field(min_length=1)
    owner_id: str = Field(min_length=1)


def _message_json(m: StoredMessage) -> dict:
    return {
        "message_id": m.message_id,
        "wall_id": m.wall_id,
        "author_id": m.author_id,
        "text": m.message.text,
        "status": m.status.value,
        "flagged_classes": sorted(c.value for c in m.flagged_classes),
        "evidence": None
        if m.evidence is None
        else {label.value: p for label, p in m.evidence.probs.items()},
        "manager_action": None
        if m.manager_action is None
        else {
            "action": m.manager_action.action,
            "actor": m.manager_action.actor,
            "ts": m.manager_action.ts,
        },
        "rejected_reason": m.rejected_reason,
        "created_ts": m.created_ts,
    }


def _profile_json(p: UserProfile) -> dict:
    return {
        "user_id": p.user_id,
        "recent_outcomes": [sorted(c.value for c in flags) for flags in p.recent_outcomes],
        "per_class_flag_counts": {
            c.value: n for c, n in sorted(p.per_class_flag_counts.items(), key=lambda kv: kv[0].value)
        },
        "restricted_classes": sorted(c.value for c in p.restricted_classes),
        "blocked": p.blocked,
    }


def _wall_json(w: Wall) -> dict:
    return {"wall_id": w.wall_id, "owner_id": w.owner_id, "policy": policy_to_json(w.policy)}


def create_app(service: ModerationService, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="wallguard", docs_url=None, redoc_url=None)

    def manager_auth(authorization: str | None = Header(default=None)) -> None:
        expected = f"Bearer {service.config.manager_token}"
        if authorization != expected:
            raise HTTPException(status_code=401, detail="manager token required")

    manager = Depends(manager_auth)

    @app.exception_handler(WallguardError)
    async def wallguard_error(request, exc: WallguardError):
        from fastapi.responses import JSONResponse

        for kind, status in _STATUS_BY_ERROR:
            if isinstance(exc, kind):
                return JSONResponse(status_code=status, content={"detail": str(exc)})
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "model_version": service.model_version}

    @app.post("/walls/{wall_id}/messages", status_code=201)
    def post_message(wall_id: str, body: PostMessageBody):
        stored = service.post_message(wall_id, body.author_id, body.text)
        return {
            "message_id": stored.message_id,
            "status": stored.status.value,
            "evidence": None
            if stored.evidence is None
            else {label.value: p for label, p in stored.evidence.probs.items()},
        }

    @app.get("/walls/{wall_id}")
    def get_wall(wall_id: str, page: int = Query(default=1, ge=1), limit: int = Query(default=50, ge=1, le=500)):
        return [_message_json(m) for m in service.get_wall(wall_id, page=page, limit=limit)]

    @app.get("/walls/{wall_id}/rules")
    def get_rules(wall_id: str):
        return _wall_json(service.get_wall_meta(wall_id))

    @app.get("/moderation/queue", dependencies=[manager])
    def moderation_queue(class_filter: str | None = Query(default=None, alias="class")):
        label = None
        if class_filter is not None:
            try:
                label = ClassLabel.from_string(class_filter)
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from None
        return [_message_json(m) for m in service.moderation_queue(label)]

    @app.post("/moderation/{message_id}", dependencies=[manager])
    def moderation_decision(message_id: str, body: ModerationBody):
        if body.action not in ("approve", "reject"):
            raise HTTPException(status_code=422, detail="action must be approve or reject")
        return _message_json(service.manager_decision(message_id, body.action, actor="manager"))

    @app.get("/users/{user_id}")
    def get_user(user_id: str):
        return _profile_json(service.get_user(user_id))

    @app.post("/users/{user_id}/block", dependencies=[manager])
    def set_block(user_id: str, body: BlockBody):
        return _profile_json(service.set_user_block(user_id, body.blocked, actor="manager"))

    @app.put("/walls/{wall_id}/rules", dependencies=[manager])
    def set_rules(wall_id: str, body: RulesBody):
        try:
            policy = policy_from_json(body.model_dump())
        except (KeyError, ValueError) as exc:
            if isinstance(exc, WallguardError):
                raise
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return _wall_json(service.set_wall_rules(wall_id, policy))

    @app.post("/walls", status_code=201, dependencies=[manager])
    def create_wall(body: CreateWallBody):
        return _wall_json(service.create_wall(body.wall_id, body.owner_id))

    @app.post("/admin/retrain", status_code=202, dependencies=[manager])
    def retrain(body: RetrainBody):
        try:
            return {"model_version": service.retrain(body.corpus_path)}
        except FileNotFoundError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None

    @app.get("/reports/latest")
    def latest_report():
        return Response(content=service.latest_report_bytes(), media_type="application/json")

    if ui_dir is not None and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
