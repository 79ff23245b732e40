"""Reveal/cover state machine with dwell and grace hysteresis.

A frame qualifies when it matches the required gesture at or above the
confidence threshold. The gate unlocks after `dwell_frames` consecutive
qualifying frames and relocks after `grace_frames + 1` consecutive misses;
the grace window is what keeps a borderline stream from flickering the media
between covered and uncovered.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .classifier import Classification, GestureClass
from .landmarks import Trace


class Phase(enum.Enum):
    LOCKED = "Locked"
    UNLOCKED = "Unlocked"

    def __str__(self) -> str:
        return self.value


class EventKind(enum.Enum):
    UNLOCKED = "Unlocked"
    RELOCKED = "Relocked"

    def __str__(self) -> str:
        return self.value


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GateConfig:
    required_gesture: GestureClass
    confidence_threshold: float = 0.90
    dwell_frames: int = 3
    grace_frames: int = 5

    def __post_init__(self):
        if self.required_gesture is GestureClass.BACKGROUND:
            raise ValueError("required_gesture must not be Background")
        if not 0.0 <= self.confidence_threshold <= 1.0:
            raise ValueError(f"confidence_threshold must be in [0, 1], got {self.confidence_threshold}")
        if self.dwell_frames < 1:
            raise ValueError("dwell_frames must be a positive integer")
        if self.grace_frames < 0:
            raise ValueError("grace_frames must be non-negative")

    def to_dict(self) -> dict:
        return {
            "required_gesture": self.required_gesture.value,
            "confidence_threshold": self.confidence_threshold,
            "dwell_frames": self.dwell_frames,
            "grace_frames": self.grace_frames,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GateConfig":
        return cls(
            required_gesture=GestureClass(data["required_gesture"]),
            confidence_threshold=float(data.get("confidence_threshold", 0.90)),
            dwell_frames=int(data.get("dwell_frames", 3)),
            grace_frames=int(data.get("grace_frames", 5)),
        )


@dataclass(frozen=True)
class GateEvent:
    kind: EventKind
    frame_index: int


@dataclass(frozen=True)
class GateState:
    phase: Phase = Phase.LOCKED
    qualifying_streak: int = 0
    miss_streak: int = 0
    frames_seen: int = 0  # running frame index, stamped onto events


def qualifies(c: Classification, config: GateConfig) -> bool:
    return c.gesture is config.required_gesture and c.confidence >= config.confidence_threshold


def step(
    state: GateState, c: Classification, config: GateConfig
) -> tuple[GateState, bool, list[GateEvent]]:
    """Advance the gate by one classified frame.

    Returns the new state, whether media may be shown for this frame, and
    any phase-change events (at most one per step).
    """
    index = state.frames_seen
    events: list[GateEvent] = []
    q = qualifies(c, config)

    if state.phase is Phase.LOCKED:
        streak = state.qualifying_streak + 1 if q else 0
        if q and streak >= config.dwell_frames:
            state = GateState(Phase.UNLOCKED, 0, 0, index + 1)
            events.append(GateEvent(EventKind.UNLOCKED, index))
        else:
            state = GateState(Phase.LOCKED, streak, 0, index + 1)
    else:
        misses = 0 if q else state.miss_streak + 1
        if misses >= config.grace_frames + 1:
            state = GateState(Phase.LOCKED, 0, 0, index + 1)
            events.append(GateEvent(EventKind.RELOCKED, index))
        else:
            state = GateState(Phase.UNLOCKED, 0, misses, index + 1)

    return state, state.phase is Phase.UNLOCKED, events


def run_gate(
    classifications: list[Classification], config: GateConfig
) -> tuple[list[bool], list[GateEvent]]:
    """Fold `step` over a whole classification stream from the Locked state."""
    state = GateState()
    mask: list[bool] = []
    events: list[GateEvent] = []
    for c in classifications:
        state, reveal, evs = step(state, c, config)
        mask.append(reveal)
        events.extend(evs)
    return mask, events


def detection_latency(
    trace: Trace, classifications: list[Classification], config: GateConfig
) -> int | None:
    """Milliseconds from the first frame to the frame whose step unlocks the
    gate, or None if the stream never unlocks."""
    if len(trace.frames) != len(classifications):
        raise LengthMismatch(
            f"{len(trace.frames)} frames but {len(classifications)} classifications"
        )
    _, events = run_gate(classifications, config)
    for event in events:
        if event.kind is EventKind.UNLOCKED:
            return trace.frames[event.frame_index].timestamp_ms - trace.frames[0].timestamp_ms
    return None
