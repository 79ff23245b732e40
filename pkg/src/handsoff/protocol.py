"""Wire protocol: version-1 single-line JSON records over any full-duplex
text transport.

Every record is `{"v": 1, "type": "<TypeName>", ...fields}`. Field values
stay wire-shaped here (strings, numbers, plain dicts); turning them into
domain objects is the relay's job. Streamed frames reuse the trace-file line
format in the `frame` field.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

PROTOCOL_VERSION = 1


class ProtocolError(ValueError):
    pass


@dataclass(frozen=True)
class Compose:
    sender_id: str
    recipient_id: str
    mime: str
    required_gesture: str
    gate_config: dict
    payload_b64: str
    context: dict | None = None


@dataclass(frozen=True)
class ComposeAck:
    media_id: str


@dataclass(frozen=True)
class UnlockRequest:
    media_id: str
    recipient_id: str


@dataclass(frozen=True)
class LandmarkFrameMsg:
    session_id: str
    frame: str  # one trace-format frame line


@dataclass(frozen=True)
class GateStateMsg:
    session_id: str
    phase: str  # "Locked" | "Unlocked"
    confidence: float


@dataclass(frozen=True)
class MediaChunk:
    session_id: str
    seq: int
    total: int
    bytes_b64: str


@dataclass(frozen=True)
class ScreenshotEventMsg:
    session_id: str
    method: str
    phase: str | None = None  # stamped by the server on echo/forward


@dataclass(frozen=True)
class SessionEnd:
    session_id: str


@dataclass(frozen=True)
class ErrorMsg:
    code: str
    detail: str
    session_id: str | None = None


@dataclass(frozen=True)
class EnvelopeMeta:
    """Envelope metadata (never payload bytes); precedes any media in an
    unlock session and announces new media to a connected recipient."""

    session_id: str
    media_id: str
    required_gesture: str
    mime: str
    sender_id: str
    recipient_id: str
    gate_config: dict
    context: dict | None = None


WireMessage = (
    Compose
    | ComposeAck
    | UnlockRequest
    | LandmarkFrameMsg
    | GateStateMsg
    | MediaChunk
    | ScreenshotEventMsg
    | SessionEnd
    | ErrorMsg
    | EnvelopeMeta
)

_TYPES = {
    cls.__name__: cls
    for cls in (
        Compose,
        ComposeAck,
        UnlockRequest,
        LandmarkFrameMsg,
        GateStateMsg,
        MediaChunk,
        ScreenshotEventMsg,
        SessionEnd,
        ErrorMsg,
        EnvelopeMeta,
    )
}


def encode_message(msg: WireMessage) -> str:
    record = {"v": PROTOCOL_VERSION, "type": type(msg).__name__}
    for key, value in asdict(msg).items():
        if value is not None:
            record[key] = value
    return json.dumps(record, separators=(",", ":"), sort_keys=True)


def decode_message(line: str) -> WireMessage:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"not a JSON record: {exc}") from None
    if not isinstance(record, dict):
        raise ProtocolError("record must be a JSON object")
    if record.get("v") != PROTOCOL_VERSION:
        raise ProtocolError(f"unsupported protocol version {record.get('v')!r}")
    type_name = record.get("type")
    cls = _TYPES.get(type_name)
    if cls is None:
        raise ProtocolError(f"unknown message type {type_name!r}")
    known = {f.name for f in fields(cls)}
    payload = {k: v for k, v in record.items() if k not in ("v", "type")}
    unknown = set(payload) - known
    if unknown:
        raise ProtocolError(f"{type_name} carries unknown fields {sorted(unknown)}")
    try:
        return cls(**payload)
    except TypeError as exc:
        raise ProtocolError(f"{type_name}: {exc}") from None
