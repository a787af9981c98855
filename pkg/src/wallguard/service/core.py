"""Event-sourced moderation service.

All state changes flow through one path: build an event dict, append it
to the log, then fold it into memory with _apply. Restart replays the
log through the same _apply, so live state and replayed state cannot
diverge. Events carry everything needed to re-fold them (posterior
evidence, the policy snapshot in force, timestamps); replay never runs
the classifier.

A single re-entrant lock serializes mutations, which gives both
guarantees the module needs: per-user decision ordering and one
serialized append point.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from ..corpus import RawMessage, StopList, load_corpus, preprocess
from ..errors import (
    DuplicateId,
    MessageNotFound,
    NotPending,
    NotPublished,
    UserNotFound,
    WallNotFound,
)
from ..evaluate import EvalConfig, benchmark_compare
from ..labels import ClassLabel
from ..nbayes import ClassPosterior, NbModel, classify, load_model, save_model, train
from ..policy import (
    DecisionKind,
    PolicyConfig,
    UserProfile,
    apply_outcome,
    decide,
)
from ..reports import report_to_json
from .config import ServiceConfig, policy_from_json, policy_to_json
from .events import EventLog


class MessageStatus(Enum):
    PUBLISHED = "published"
    PENDING = "pending"
    REJECTED = "rejected"
    DELETED = "deleted"


@dataclass(frozen=True)
class ManagerAction:
    action: str  # "approve" | "reject"
    actor: str
    ts: float


@dataclass(frozen=True)
class Wall:
    wall_id: str
    owner_id: str
    policy: PolicyConfig


@dataclass(frozen=True)
class StoredMessage:
    message: RawMessage
    wall_id: str
    status: MessageStatus
    flagged_classes: frozenset[ClassLabel]
    evidence: ClassPosterior | None  # absent only for blocked-author rejections
    policy_snapshot: PolicyConfig
    manager_action: ManagerAction | None
    rejected_reason: str | None
    created_ts: float

    @property
    def message_id(self) -> str:
        return self.message.id

    @property
    def author_id(self) -> str:
        return self.message.author_id


def _evidence_to_json(evidence: ClassPosterior | None) -> dict | None:
    if evidence is None:
        return None
    return {label.value: p for label, p in evidence.probs.items()}


def _evidence_from_json(payload: dict | None) -> ClassPosterior | None:
    if payload is None:
        return None
    return ClassPosterior.from_probs(
        {ClassLabel.from_string(v): float(p) for v, p in payload.items()}
    )


class ModerationService:
    def __init__(self, config: ServiceConfig):
        from .. import bundled_corpus_path, default_stoplist_path

        self.config = config
        self._lock = threading.RLock()
        self._stops = StopList.from_path(
            config.stoplist_path if config.stoplist_path else default_stoplist_path()
        )
        self._corpus_path = Path(
            config.corpus_path if config.corpus_path else bundled_corpus_path()
        )

        self._walls: dict[str, Wall] = {}
        self._messages: dict[str, StoredMessage] = {}
        self._wall_order: dict[str, list[str]] = {}
        self._profiles: dict[str, UserProfile] = {}
        self._user_history: dict[str, list[tuple[str, object]]] = {}
        self._model: NbModel | None = None
        self._model_version = -1
        self._model_file: Path | None = None

        config.data_dir.mkdir(parents=True, exist_ok=True)
        self._log = EventLog(config.data_dir / "events.jsonl")
        for event in self._log.replay():
            self._apply(event)
        if self._model_file is not None:
            self._model = load_model(Path(self._model_file).read_bytes())
        if not self._walls:
            for wall_id, owner_id in config.walls:
                self._record(
                    {
                        "event": "wall_created",
                        "wall_id": wall_id,
                        "owner_id": owner_id,
                        "policy": policy_to_json(config.default_policy),
                    }
                )
        if self._model is None:
            self._bootstrap_model()

    # ------------------------------------------------------------- plumbing

    def _record(self, event: dict) -> None:
        """Persist an event, then fold it into live state."""
        self._log.append(event)
        self._apply(event)

    def _bootstrap_model(self) -> None:
        if self.config.model_path is not None:
            path = Path(self.config.model_path)
            self._model = load_model(path.read_bytes())
            self._record(
                {
                    "event": "model_retrained",
                    "model_version": "v0",
                    "model_file": str(path),
                    "corpus_file": None,
                    "ts": time.time(),
                }
            )
            return
        self.retrain(self._corpus_path)

    @property
    def model_version(self) -> str:
        return f"v{self._model_version}"

    # ---------------------------------------------------------------- fold

    def _apply(self, event: dict) -> None:
        kind = event["event"]
        if kind == "wall_created":
            self._walls[event["wall_id"]] = Wall(
                wall_id=event["wall_id"],
                owner_id=event["owner_id"],
                policy=policy_from_json(event["policy"]),
            )
            self._wall_order.setdefault(event["wall_id"], [])
        elif kind == "message_posted":
            self._apply_post(event)
        elif kind == "manager_action":
            self._apply_manager_action(event)
        elif kind == "user_block_set":
            user_id = event["user_id"]
            profile = self._profiles.get(user_id, UserProfile(user_id=user_id))
            self._profiles[user_id] = replace(profile, blocked=bool(event["blocked"]))
            self._user_history.setdefault(user_id, []).append(
                ("block", bool(event["blocked"]))
            )
        elif kind == "rules_changed":
            wall = self._walls[event["wall_id"]]
            self._walls[event["wall_id"]] = replace(
                wall, policy=policy_from_json(event["policy"])
            )
        elif kind == "message_deleted":
            message = self._messages[event["message_id"]]
            self._messages[event["message_id"]] = replace(
                message, status=MessageStatus.DELETED
            )
        elif kind == "model_retrained":
            self._model_version += 1
            self._model_file = Path(event["model_file"])
        else:
            raise ValueError(f"unknown event kind {kind!r}")

    def _apply_post(self, event: dict) -> None:
        status = MessageStatus(event["status"])
        flagged = frozenset(ClassLabel.from_string(v) for v in event["flagged"])
        policy = policy_from_json(event["policy"])
        stored = StoredMessage(
            message=RawMessage(
                id=event["message_id"],
                author_id=event["author_id"],
                text=event["text"],
            ),
            wall_id=event["wall_id"],
            status=status,
            flagged_classes=flagged,
            evidence=_evidence_from_json(event["evidence"]),
            policy_snapshot=policy,
            manager_action=None,
            rejected_reason=event.get("rejected_reason"),
            created_ts=event["ts"],
        )
        self._messages[stored.message_id] = stored
        self._wall_order.setdefault(stored.wall_id, []).append(stored.message_id)

        author = stored.author_id
        self._user_history.setdefault(author, []).append(("post", stored.message_id))
        profile = self._profiles.get(author, UserProfile(user_id=author))
        if stored.rejected_reason != "blocked":
            profile = apply_outcome(profile, flagged, policy)
        self._profiles[author] = profile

    def _apply_manager_action(self, event: dict) -> None:
        message = self._messages[event["message_id"]]
        action = ManagerAction(
            action=event["action"], actor=event["actor"], ts=event["ts"]
        )
        status = (
            MessageStatus.PUBLISHED
            if event["action"] == "approve"
            else MessageStatus.REJECTED
        )
        self._messages[event["message_id"]] = replace(
            message, status=status, manager_action=action
        )
        if event["action"] == "approve":
            # the flag is void now; re-derive the author's profile without it
            self._recompute_profile(message.author_id)

    def _recompute_profile(self, user_id: str) -> None:
        profile = UserProfile(user_id=user_id)
        for kind, value in self._user_history.get(user_id, []):
            if kind == "block":
                profile = replace(profile, blocked=bool(value))
                continue
            message = self._messages[value]
            if message.rejected_reason == "blocked":
                continue  # never reached the classifier, never counted
            approved = (
                message.manager_action is not None
                and message.manager_action.action == "approve"
            )
            flags = frozenset() if approved else message.flagged_classes
            profile = apply_outcome(profile, flags, message.policy_snapshot)
        self._profiles[user_id] = profile

    # ----------------------------------------------------------- operations

    def post_message(self, wall_id: str, author_id: str, text: str) -> StoredMessage:
        with self._lock:
            wall = self._walls.get(wall_id)
            if wall is None:
                raise WallNotFound(f"no wall {wall_id!r}")
            message_id = uuid.uuid4().hex
            profile = self._profiles.get(author_id)

            if profile is not None and profile.blocked:
                event = {
                    "event": "message_posted",
                    "message_id": message_id,
                    "wall_id": wall_id,
                    "author_id": author_id,
                    "text": text,
                    "status": MessageStatus.REJECTED.value,
                    "flagged": [],
                    "evidence": None,
                    "rejected_reason": "blocked",
                    "policy": policy_to_json(wall.policy),
                    "ts": time.time(),
                }
                self._record(event)
                return self._messages[message_id]

            doc = preprocess(
                RawMessage(id=message_id, author_id=author_id, text=text), self._stops
            )
            result = classify(self._model, doc)
            decision = decide(result, wall.policy)
            status = (
                MessageStatus.PUBLISHED
                if decision.kind is DecisionKind.PUBLISH
                else MessageStatus.PENDING
            )
            event = {
                "event": "message_posted",
                "message_id": message_id,
                "wall_id": wall_id,
                "author_id": author_id,
                "text": text,
                "status": status.value,
                "flagged": sorted(c.value for c in decision.flagged_classes),
                "evidence": _evidence_to_json(result),
                "rejected_reason": None,
                "policy": policy_to_json(wall.policy),
                "ts": time.time(),
            }
            self._record(event)
            return self._messages[message_id]

    def get_wall(self, wall_id: str, page: int = 1, limit: int = 50) -> list[StoredMessage]:
        if page < 1 or limit < 1:
            raise ValueError("page and limit must be >= 1")
        with self._lock:
            if wall_id not in self._walls:
                raise WallNotFound(f"no wall {wall_id!r}")
            published = [
                self._messages[mid]
                for mid in reversed(self._wall_order.get(wall_id, []))
                if self._messages[mid].status is MessageStatus.PUBLISHED
            ]
            start = (page - 1) * limit
            return published[start : start + limit]

    def get_wall_meta(self, wall_id: str) -> Wall:
        with self._lock:
            wall = self._walls.get(wall_id)
            if wall is None:
                raise WallNotFound(f"no wall {wall_id!r}")
            return wall

    def walls(self) -> list[Wall]:
        with self._lock:
            return list(self._walls.values())

    def moderation_queue(self, class_filter: ClassLabel | None = None) -> list[StoredMessage]:
        with self._lock:
            pending = [
                m
                for m in self._messages.values()
                if m.status is MessageStatus.PENDING
                and (class_filter is None or class_filter in m.flagged_classes)
            ]
            return sorted(pending, key=lambda m: m.created_ts)

    def manager_decision(self, message_id: str, action: str, actor: str) -> StoredMessage:
        if action not in ("approve", "reject"):
            raise ValueError(f"action must be approve or reject, got {action!r}")
        with self._lock:
            message = self._messages.get(message_id)
            if message is None:
                raise MessageNotFound(f"no message {message_id!r}")
            if message.status is not MessageStatus.PENDING:
                raise NotPending(
                    f"message {message_id!r} is {message.status.value}, not pending"
                )
            self._record(
                {
                    "event": "manager_action",
                    "message_id": message_id,
                    "action": action,
                    "actor": actor,
                    "ts": time.time(),
                }
            )
            return self._messages[message_id]

    def get_user(self, user_id: str) -> UserProfile:
        with self._lock:
            profile = self._profiles.get(user_id)
            if profile is None:
                raise UserNotFound(f"no profile for user {user_id!r}")
            return profile

    def set_user_block(self, user_id: str, blocked: bool, actor: str) -> UserProfile:
        with self._lock:
            if user_id not in self._profiles:
                raise UserNotFound(f"no profile for user {user_id!r}")
            self._record(
                {
                    "event": "user_block_set",
                    "user_id": user_id,
                    "blocked": blocked,
                    "actor": actor,
                    "ts": time.time(),
                }
            )
            return self._profiles[user_id]

    def set_wall_rules(self, wall_id: str, policy: PolicyConfig) -> Wall:
        policy.validate()
        with self._lock:
            if wall_id not in self._walls:
                raise WallNotFound(f"no wall {wall_id!r}")
            self._record(
                {
                    "event": "rules_changed",
                    "wall_id": wall_id,
                    "policy": policy_to_json(policy),
                    "ts": time.time(),
                }
            )
            return self._walls[wall_id]

    def create_wall(
        self, wall_id: str, owner_id: str, policy: PolicyConfig | None = None
    ) -> Wall:
        with self._lock:
            if wall_id in self._walls:
                raise DuplicateId(f"wall {wall_id!r} already exists")
            self._record(
                {
                    "event": "wall_created",
                    "wall_id": wall_id,
                    "owner_id": owner_id,
                    "policy": policy_to_json(policy or self.config.default_policy),
                }
            )
            return self._walls[wall_id]

    def delete_message(self, message_id: str, actor: str) -> StoredMessage:
        with self._lock:
            message = self._messages.get(message_id)
            if message is None:
                raise MessageNotFound(f"no message {message_id!r}")
            if message.status is not MessageStatus.PUBLISHED:
                raise NotPublished(
                    f"message {message_id!r} is {message.status.value}, not published"
                )
            self._record(
                {
                    "event": "message_deleted",
                    "message_id": message_id,
                    "actor": actor,
                    "ts": time.time(),
                }
            )
            return self._messages[message_id]

    def retrain(self, corpus_path: str | Path) -> str:
        """Train a fresh model from a corpus file and swap it in."""
        corpus = load_corpus(corpus_path)  # corpus errors propagate, old model stays
        docs = [preprocess(d, self._stops) for d in corpus.labeled_docs]
        model = train(docs, alpha=1.0)
        with self._lock:
            version = self._model_version + 1
            models_dir = self.config.data_dir / "models"
            models_dir.mkdir(parents=True, exist_ok=True)
            model_file = models_dir / f"v{version}.json"
            model_file.write_bytes(save_model(model))
            self._record(
                {
                    "event": "model_retrained",
                    "model_version": f"v{version}",
                    "model_file": str(model_file),
                    "corpus_file": str(corpus_path),
                    "ts": time.time(),
                }
            )
            self._model = model
            return self.model_version

    def latest_report_bytes(self) -> bytes:
        """The most recent comparison report, computing one on first ask."""
        path = self.config.data_dir / "reports" / "latest.json"
        with self._lock:
            if not path.exists():
                report = benchmark_compare(
                    load_corpus(self._corpus_path), EvalConfig(), self._stops
                )
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_bytes(report_to_json(report))
            return path.read_bytes()

    def close(self) -> None:
        self._log.close()
