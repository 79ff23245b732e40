"""Media envelopes and context-driven gesture recommendation.

A sender attaches media to a required gesture plus optional context axes
(content seriousness, relationship closeness, viewing location). The
recommendation logic ranks the four unlock gestures for a context:
protective contexts (serious content or a not-close recipient) lean on
deterrence, casual ones on social fit, with public viewing always pulling
toward socially acceptable gestures.
"""

from __future__ import annotations

import enum
import time
import uuid
from dataclasses import dataclass

from .classifier import GestureClass, UNLOCK_GESTURES
from .gate import GateConfig


class Content(enum.Enum):
    SERIOUS = "Serious"
    SILLY = "Silly"


class Relationship(enum.Enum):
    CLOSE = "Close"
    NOT_CLOSE = "NotClose"


class Location(enum.Enum):
    PUBLIC = "Public"
    PRIVATE = "Private"


class MissingProfile(ValueError):
    pass


class EmptyPayload(ValueError):
    pass


class InvalidGesture(ValueError):
    pass


@dataclass(frozen=True)
class ContextAxes:
    content: Content
    relationship: Relationship
    location: Location

    def to_dict(self) -> dict:
        return {
            "content": self.content.value,
            "relationship": self.relationship.value,
            "location": self.location.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ContextAxes":
        return cls(
            Content(data["content"]),
            Relationship(data["relationship"]),
            Location(data["location"]),
        )


@dataclass(frozen=True)
class GestureProfile:
    gesture: GestureClass
    deterrence: float
    social_acceptability: float

    def __post_init__(self):
        if not (0.0 <= self.deterrence <= 1.0 and 0.0 <= self.social_acceptability <= 1.0):
            raise ValueError("profile scores must lie in [0, 1]")


# Default profiles preserve the ordinal placement of the four gestures on the
# deterrence / social-acceptability axes: a wave blends in anywhere but stops
# little; binoculars are the strongest (and strangest) deterrent.
DEFAULT_PROFILES = (
    GestureProfile(GestureClass.WAVE, 0.40, 0.95),
    GestureProfile(GestureClass.INTERLACE, 0.70, 0.80),
    GestureProfile(GestureClass.FRAME, 0.75, 0.45),
    GestureProfile(GestureClass.BINOCULARS, 0.85, 0.20),
)

# Ties resolve most-protective-yet-acceptable first.
_RECOMMEND_TIE_ORDER = (
    GestureClass.INTERLACE,
    GestureClass.WAVE,
    GestureClass.FRAME,
    GestureClass.BINOCULARS,
)


def recommend_gesture(
    axes: ContextAxes, profiles: tuple[GestureProfile, ...] = DEFAULT_PROFILES
) -> list[GestureClass]:
    """Rank the four unlock gestures for a sharing context.

    Raises MissingProfile unless every unlock gesture has a profile.
    """
    by_gesture = {p.gesture: p for p in profiles}
    missing = [g for g in UNLOCK_GESTURES if g not in by_gesture]
    if missing:
        raise MissingProfile(f"no profile for {', '.join(g.value for g in missing)}")

    protective = axes.content is Content.SERIOUS or axes.relationship is Relationship.NOT_CLOSE

    def score(p: GestureProfile) -> float:
        if protective:
            if axes.location is Location.PUBLIC:
                return 0.7 * p.deterrence + 0.3 * p.social_acceptability
            return p.deterrence
        if axes.location is Location.PUBLIC:
            return 0.3 * p.deterrence + 0.7 * p.social_acceptability
        # Silly + close + private: playfulness wins, i.e. inverse acceptability.
        return 0.3 * p.deterrence + 0.7 * (1.0 - p.social_acceptability)

    tie_rank = {g: i for i, g in enumerate(_RECOMMEND_TIE_ORDER)}
    return sorted(
        UNLOCK_GESTURES,
        key=lambda g: (-score(by_gesture[g]), tie_rank[g]),
    )


@dataclass(frozen=True)
class MediaEnvelope:
    media_id: str
    mime_type: str
    payload_ref: str  # opaque handle into the payload store, never the bytes
    required_gesture: GestureClass
    gate_config: GateConfig
    sender_id: str
    recipient_id: str
    created_at: float
    context: ContextAxes | None = None

    def __post_init__(self):
        if self.required_gesture is GestureClass.BACKGROUND:
            raise InvalidGesture("required_gesture must not be Background")

    def to_dict(self) -> dict:
        return {
            "media_id": self.media_id,
            "mime_type": self.mime_type,
            "payload_ref": self.payload_ref,
            "required_gesture": self.required_gesture.value,
            "gate_config": self.gate_config.to_dict(),
            "sender_id": self.sender_id,
            "recipient_id": self.recipient_id,
            "created_at": self.created_at,
            "context": self.context.to_dict() if self.context else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MediaEnvelope":
        context = data.get("context")
        return cls(
            media_id=data["media_id"],
            mime_type=data["mime_type"],
            payload_ref=data["payload_ref"],
            required_gesture=GestureClass(data["required_gesture"]),
            gate_config=GateConfig.from_dict(data["gate_config"]),
            sender_id=data["sender_id"],
            recipient_id=data["recipient_id"],
            created_at=float(data["created_at"]),
            context=ContextAxes.from_dict(context) if context else None,
        )


def make_envelope(
    sender_id: str,
    recipient_id: str,
    payload: bytes,
    mime_type: str,
    required_gesture: GestureClass,
    gate_config: GateConfig,
    store,
    context: ContextAxes | None = None,
    created_at: float | None = None,
) -> MediaEnvelope:
    """Persist the payload through `store` (anything with put(bytes) -> ref)
    and return an envelope referencing it. Every call mints a fresh media_id.
    """
    if required_gesture is GestureClass.BACKGROUND:
        raise InvalidGesture("required_gesture must not be Background")
    if not payload:
        raise EmptyPayload("media payload must not be empty")
    payload_ref = store.put(payload)
    return MediaEnvelope(
        media_id=uuid.uuid4().hex,
        mime_type=mime_type,
        payload_ref=payload_ref,
        required_gesture=required_gesture,
        gate_config=gate_config,
        sender_id=sender_id,
        recipient_id=recipient_id,
        created_at=time.time() if created_at is None else created_at,
        context=context,
    )
