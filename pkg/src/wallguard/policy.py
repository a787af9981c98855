"""Threshold policy and per-user restriction state.

A message is flagged for every enabled non-neutral class whose posterior
reaches the tolerance threshold (closed lower bound: exactly tau flags).
Users accumulate flag history over a sliding window; when the flagged
fraction of the window reaches the block ratio the user is blocked, and
stays blocked until a manager lifts it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .errors import InvalidPolicy
from .labels import NON_NEUTRAL, ClassLabel
from .nbayes import ClassPosterior

DEFAULT_TAU = 0.3
DEFAULT_RHO = 0.5
DEFAULT_WINDOW = 10


@dataclass(frozen=True)
class PolicyConfig:
    """Tolerance threshold, enabled classes, and user-blocking window."""

    tau: float = DEFAULT_TAU
    enabled_classes: frozenset[ClassLabel] = frozenset(NON_NEUTRAL)
    rho: float = DEFAULT_RHO
    window: int = DEFAULT_WINDOW

    def validate(self) -> "PolicyConfig":
        if not 0.0 < self.tau < 1.0:
            raise InvalidPolicy(f"tau must be in (0, 1), got {self.tau}")
        if not 0.0 < self.rho <= 1.0:
            raise InvalidPolicy(f"rho must be in (0, 1], got {self.rho}")
        if self.window < 1:
            raise InvalidPolicy(f"window must be >= 1, got {self.window}")
        if not self.enabled_classes <= set(NON_NEUTRAL):
            raise InvalidPolicy("enabled_classes must be non-neutral classes")
        return self


class DecisionKind(Enum):
    PUBLISH = "publish"
    FLAG = "flag"
    REJECTED_BY_BLOCK = "rejected_by_block"


@dataclass(frozen=True)
class ModerationDecision:
    """Outcome of running a posterior through the policy."""

    kind: DecisionKind
    flagged_classes: frozenset[ClassLabel] = frozenset()
    evidence: ClassPosterior | None = None


@dataclass(frozen=True)
class UserProfile:
    """Per-user flag history, restricted classes, and blocked state.

    ``recent_outcomes`` holds the flagged-class set of each of the last
    ``window`` decided posts (empty set = published clean).
    ``per_class_flag_counts`` counts flags over the user's whole history.
    """

    user_id: str
    recent_outcomes: tuple[frozenset[ClassLabel], ...] = ()
    per_class_flag_counts: dict[ClassLabel, int] = field(default_factory=dict)
    restricted_classes: frozenset[ClassLabel] = frozenset()
    blocked: bool = False


def decide(posterior: ClassPosterior, cfg: PolicyConfig) -> ModerationDecision:
    """Flag every enabled class at or above tau; publish when none is."""
    flagged = frozenset(
        c for c in cfg.enabled_classes if posterior.probs[c] >= cfg.tau
    )
    if flagged:
        return ModerationDecision(
            kind=DecisionKind.FLAG, flagged_classes=flagged, evidence=posterior
        )
    return ModerationDecision(kind=DecisionKind.PUBLISH, evidence=posterior)


def apply_outcome(
    profile: UserProfile, flagged: frozenset[ClassLabel], cfg: PolicyConfig
) -> UserProfile:
    """Fold one decided post (its flagged-class set) into a profile."""
    window = (profile.recent_outcomes + (flagged,))[-cfg.window:]
    counts = dict(profile.per_class_flag_counts)
    for c in flagged:
        counts[c] = counts.get(c, 0) + 1
    restricted = frozenset().union(*window) if window else frozenset()
    flag_ratio = sum(1 for outcome in window if outcome) / len(window)
    return UserProfile(
        user_id=profile.user_id,
        recent_outcomes=window,
        per_class_flag_counts=counts,
        restricted_classes=restricted,
        blocked=profile.blocked or flag_ratio >= cfg.rho,
    )


def update_user(
    profile: UserProfile, decision: ModerationDecision, cfg: PolicyConfig
) -> UserProfile:
    """Record a publish/flag decision against a user.

    Blocking is sticky: once set it survives any number of clean posts
    and is lifted only by an explicit manager unblock.
    """
    if decision.kind is DecisionKind.REJECTED_BY_BLOCK:
        raise ValueError("posts rejected for a blocked author do not update the profile")
    return apply_outcome(profile, decision.flagged_classes, cfg)


def is_publishable(profile: UserProfile) -> bool:
    return not profile.blocked
