"""Trial outcome taxonomy, deterrence aggregation, and confusion metrics.

A capture attempt only counts as Successful when the gate was Unlocked at the
moment of the event — capturing a covered screen proves nothing. Trials with
no attempt at all are Skipped; everything else is AttemptedFailed. The
deterrence rate is the fraction of trials that did not yield a successful
capture.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .classifier import GestureClass
from .gate import Phase


class CaptureMethod(enum.Enum):
    BUTTON_PRESS = "ButtonPress"
    VOICE_ASSISTANT = "VoiceAssistant"
    SECOND_DEVICE = "SecondDevice"
    OTHER = "Other"


class TrialOutcome(enum.Enum):
    SUCCESSFUL = "Successful"
    ATTEMPTED_FAILED = "AttemptedFailed"
    SKIPPED = "Skipped"


class EmptyAfterExclusion(ValueError):
    pass


class UndefinedMetric(ValueError):
    pass


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True)
class ScreenshotEvent:
    session_id: str
    timestamp_ms: int
    method: CaptureMethod
    gate_phase_at_event: Phase

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "timestamp_ms": self.timestamp_ms,
            "method": self.method.value,
            "gate_phase_at_event": self.gate_phase_at_event.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScreenshotEvent":
        return cls(
            session_id=data["session_id"],
            timestamp_ms=int(data["timestamp_ms"]),
            method=CaptureMethod(data["method"]),
            gate_phase_at_event=Phase(data["gate_phase_at_event"]),
        )


@dataclass(frozen=True)
class TrialRecord:
    session_id: str
    gesture: GestureClass
    events: tuple[ScreenshotEvent, ...] = ()
    ended_without_attempt: bool = False

    def __post_init__(self):
        object.__setattr__(self, "events", tuple(self.events))
        if self.ended_without_attempt and self.events:
            raise ValueError("a trial that ended without an attempt cannot carry events")

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "gesture": self.gesture.value,
            "events": [e.to_dict() for e in self.events],
            "ended_without_attempt": self.ended_without_attempt,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TrialRecord":
        return cls(
            session_id=data["session_id"],
            gesture=GestureClass(data["gesture"]),
            events=tuple(ScreenshotEvent.from_dict(e) for e in data.get("events", [])),
            ended_without_attempt=bool(data.get("ended_without_attempt", False)),
        )


def classify_trial(record: TrialRecord) -> TrialOutcome:
    """Successful iff any event hit an unlocked screen, Skipped iff the trial
    ended with no attempt, otherwise AttemptedFailed."""
    if any(e.gate_phase_at_event is Phase.UNLOCKED for e in record.events):
        return TrialOutcome.SUCCESSFUL
    if record.ended_without_attempt:
        return TrialOutcome.SKIPPED
    return TrialOutcome.ATTEMPTED_FAILED


@dataclass(frozen=True)
class DeterrenceReport:
    counts: dict[TrialOutcome, int]
    total: int
    deterrence_rate: float
    excluded: frozenset[GestureClass] = frozenset()


def deterrence_report(
    records: list[TrialRecord], exclude: set[GestureClass] = frozenset()
) -> DeterrenceReport:
    kept = [r for r in records if r.gesture not in exclude]
    if not kept:
        raise EmptyAfterExclusion("no trials left after exclusion")
    counts = {outcome: 0 for outcome in TrialOutcome}
    for record in kept:
        counts[classify_trial(record)] += 1
    total = len(kept)
    deterred = counts[TrialOutcome.ATTEMPTED_FAILED] + counts[TrialOutcome.SKIPPED]
    return DeterrenceReport(counts, total, deterred / total, frozenset(exclude))


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError("confusion counts must be non-negative")


@dataclass(frozen=True)
class GestureMetrics:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class MetricsReport:
    per_gesture: dict[GestureClass, GestureMetrics] = field(default_factory=dict)


def metrics(counts: ConfusionCounts) -> GestureMetrics:
    """Precision, recall and F1 at full precision; rounding is presentation's
    business. F1 of the all-zero-tp degenerate case is 0."""
    if counts.tp + counts.fp == 0 or counts.tp + counts.fn == 0:
        raise UndefinedMetric(f"zero denominator in {counts}")
    precision = counts.tp / (counts.tp + counts.fp)
    recall = counts.tp / (counts.tp + counts.fn)
    f1 = 0.0 if precision + recall == 0 else 2 * precision * recall / (precision + recall)
    return GestureMetrics(precision, recall, f1)


def metrics_report(per_gesture: dict[GestureClass, ConfusionCounts]) -> MetricsReport:
    return MetricsReport({g: metrics(c) for g, c in per_gesture.items()})


def latency_summary(latencies_ms: list[float]) -> tuple[float, float, float]:
    """(mean, min, max) of detection latencies in milliseconds."""
    if not latencies_ms:
        raise EmptyInput("no latencies to summarize")
    if any(v < 0 for v in latencies_ms):
        raise ValueError("latencies must be non-negative")
    return (sum(latencies_ms) / len(latencies_ms), min(latencies_ms), max(latencies_ms))
