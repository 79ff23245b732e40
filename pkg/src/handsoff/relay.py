"""Relay core: sessions, server-side gating, and chunked media release.

The core is transport-agnostic; front-ends feed it decoded wire messages and
deliver whatever it returns. Classification and gating run here, server
side, so the covered/uncovered decision can never be overridden by a client:
media chunks are only ever produced in the same step that holds the gate
open, and a relock freezes the chunk stream mid-payload. A fresh unlock
always retransmits from the first chunk.
"""

from __future__ import annotations

import base64
import binascii
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .accounting import CaptureMethod, ScreenshotEvent, TrialRecord
from .classifier import Classification, ClassifierConfig, GestureClass, classify
from .envelope import ContextAxes, EmptyPayload, InvalidGesture, MediaEnvelope, make_envelope
from .gate import GateConfig, GateEvent, GateState, Phase, step
from .landmarks import LandmarkFrame, TraceError, parse_frame_line
from .protocol import (
    Compose,
    ComposeAck,
    EnvelopeMeta,
    GateStateMsg,
    MediaChunk,
    ScreenshotEventMsg,
    UnlockRequest,
    WireMessage,
)
from .storage import BlobStore, MetadataStore

CHUNK_SIZE = 64 * 1024
DEFAULT_PAYLOAD_CAP = 16 * 1024 * 1024


class RelayError(Exception):
    """Protocol-level failure; `code` feeds the wire ErrorMsg."""

    def __init__(self, code: str, detail: str, fatal: bool = False):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
        self.fatal = fatal  # fatal errors terminate the session


@dataclass
class Session:
    session_id: str
    envelope: MediaEnvelope
    gate_config: GateConfig
    chunks: list[bytes]
    gate_state: GateState = field(default_factory=GateState)
    next_chunk: int = 0
    payload_exhausted: bool = False
    last_timestamp_ms: int = 0
    open: bool = True
    classifications: list[Classification] = field(default_factory=list)
    reveal_mask: list[bool] = field(default_factory=list)
    gate_events: list[GateEvent] = field(default_factory=list)
    screenshot_events: list[ScreenshotEvent] = field(default_factory=list)


def _chunk_payload(payload: bytes) -> list[bytes]:
    return [payload[i : i + CHUNK_SIZE] for i in range(0, len(payload), CHUNK_SIZE)] or [b""]


class RelayCore:
    """Single-owner session engine; one front-end task drives each session.

    `notify_sender` / `notify_recipient`, when set by the front-end, deliver
    out-of-session messages (capture notifications, new-media announcements)
    to a connected peer; the core never requires them to succeed.
    """

    def __init__(
        self,
        storage_dir: str | Path,
        classifier_config: ClassifierConfig | None = None,
        payload_cap: int = DEFAULT_PAYLOAD_CAP,
        chunks_per_frame: int = 1,
        sender_notifications: bool = True,
        voice_event_logging: bool = True,
    ):
        storage_dir = Path(storage_dir)
        self.blobs = BlobStore(storage_dir / "blobs")
        self.metadata = MetadataStore(storage_dir / "envelopes.jsonl")
        self.classifier_config = classifier_config or ClassifierConfig()
        self.payload_cap = payload_cap
        self.chunks_per_frame = chunks_per_frame
        self.sender_notifications = sender_notifications
        self.voice_event_logging = voice_event_logging
        self.sessions: dict[str, Session] = {}
        self.notify_sender = None
        self.notify_recipient = None

    # -- compose ---------------------------------------------------------

    def handle_compose(self, msg: Compose) -> ComposeAck:
        try:
            gesture = GestureClass(msg.required_gesture)
        except ValueError:
            raise RelayError("InvalidGesture", f"unknown gesture {msg.required_gesture!r}") from None
        if gesture is GestureClass.BACKGROUND:
            raise RelayError("InvalidGesture", "media cannot be gated on the background class")
        try:
            payload = base64.b64decode(msg.payload_b64, validate=True)
        except (binascii.Error, ValueError):
            raise RelayError("MalformedPayload", "payload_b64 does not decode") from None
        if len(payload) > self.payload_cap:
            raise RelayError("PayloadTooLarge", f"{len(payload)} bytes exceeds cap {self.payload_cap}")
        gate_config_fields = dict(msg.gate_config or {})
        gate_config_fields["required_gesture"] = gesture.value
        try:
            gate_config = GateConfig.from_dict(gate_config_fields)
        except (ValueError, KeyError) as exc:
            raise RelayError("BadGateConfig", str(exc)) from None
        context = None
        if msg.context is not None:
            try:
                context = ContextAxes.from_dict(msg.context)
            except (ValueError, KeyError) as exc:
                raise RelayError("BadContext", str(exc)) from None
        try:
            envelope = make_envelope(
                sender_id=msg.sender_id,
                recipient_id=msg.recipient_id,
                payload=payload,
                mime_type=msg.mime,
                required_gesture=gesture,
                gate_config=gate_config,
                store=self.blobs,
                context=context,
            )
        except InvalidGesture as exc:
            raise RelayError("InvalidGesture", str(exc)) from None
        except EmptyPayload as exc:
            raise RelayError("EmptyPayload", str(exc)) from None
        except OSError as exc:
            raise RelayError("StorageFailure", str(exc)) from None
        self.metadata.put(envelope.media_id, envelope.to_dict())
        if self.notify_recipient is not None:
            self.notify_recipient(
                msg.recipient_id,
                EnvelopeMeta(
                    session_id="",
                    media_id=envelope.media_id,
                    required_gesture=gesture.value,
                    mime=msg.mime,
                    sender_id=msg.sender_id,
                    recipient_id=msg.recipient_id,
                    gate_config=gate_config.to_dict(),
                    context=msg.context,
                ),
            )
        return ComposeAck(media_id=envelope.media_id)

    # -- unlock sessions --------------------------------------------------

    def open_session(self, req: UnlockRequest) -> tuple[str, list[WireMessage]]:
        """Create a session; the returned messages (envelope metadata and the
        initial Locked gate state) precede any media bytes by construction."""
        if req.media_id not in self.metadata:
            raise RelayError("UnknownMedia", f"no media {req.media_id!r}")
        record = self.metadata.get(req.media_id)
        envelope = MediaEnvelope.from_dict(record)
        if envelope.recipient_id != req.recipient_id:
            raise RelayError("NotRecipient", "media is addressed to someone else")
        payload = self.blobs.get(envelope.payload_ref)
        session = Session(
            session_id=uuid.uuid4().hex,
            envelope=envelope,
            gate_config=envelope.gate_config,
            chunks=_chunk_payload(payload),
        )
        self.sessions[session.session_id] = session
        meta = EnvelopeMeta(
            session_id=session.session_id,
            media_id=envelope.media_id,
            required_gesture=envelope.required_gesture.value,
            mime=envelope.mime_type,
            sender_id=envelope.sender_id,
            recipient_id=envelope.recipient_id,
            gate_config=envelope.gate_config.to_dict(),
            context=record.get("context"),
        )
        initial = GateStateMsg(session.session_id, Phase.LOCKED.value, 0.0)
        return session.session_id, [meta, initial]

    def _session(self, session_id: str) -> Session:
        session = self.sessions.get(session_id)
        if session is None or not session.open:
            raise RelayError("UnknownSession", f"no open session {session_id!r}")
        return session

    def handle_frame(self, msg) -> list[WireMessage]:
        """Classify one streamed frame, advance the gate, and release at most
        `chunks_per_frame` chunks while the gate stays open."""
        session = self._session(msg.session_id)
        try:
            frame: LandmarkFrame = parse_frame_line(msg.frame)
        except TraceError as exc:
            session.open = False
            raise RelayError("MalformedFrame", str(exc), fatal=True) from None
        session.last_timestamp_ms = frame.timestamp_ms

        c = classify(frame, self.classifier_config)
        before = session.gate_state.phase
        session.gate_state, reveal, events = step(session.gate_state, c, session.gate_config)
        session.classifications.append(c)
        session.reveal_mask.append(reveal)
        session.gate_events.extend(events)

        out: list[WireMessage] = []
        phase = session.gate_state.phase
        if phase is not before:
            out.append(GateStateMsg(session.session_id, phase.value, c.confidence))
            if phase is Phase.UNLOCKED:
                # Fresh unlock: no resume, the payload restarts from chunk 0.
                session.next_chunk = 0
                session.payload_exhausted = False
        if phase is Phase.UNLOCKED and not session.payload_exhausted:
            total = len(session.chunks)
            for _ in range(self.chunks_per_frame):
                if session.next_chunk >= total:
                    session.payload_exhausted = True
                    break
                chunk = session.chunks[session.next_chunk]
                out.append(
                    MediaChunk(
                        session_id=session.session_id,
                        seq=session.next_chunk,
                        total=total,
                        bytes_b64=base64.b64encode(chunk).decode("ascii"),
                    )
                )
                session.next_chunk += 1
        return out

    def handle_screenshot_event(self, msg: ScreenshotEventMsg) -> list[WireMessage]:
        """Stamp the event with the server-side gate phase, log it, echo the
        stamped record back, and notify the sender when enabled."""
        session = self._session(msg.session_id)
        try:
            method = CaptureMethod(msg.method)
        except ValueError:
            raise RelayError("BadCaptureMethod", f"unknown method {msg.method!r}") from None
        phase = session.gate_state.phase
        event = ScreenshotEvent(
            session_id=session.session_id,
            timestamp_ms=session.last_timestamp_ms,
            method=method,
            gate_phase_at_event=phase,
        )
        stamped = ScreenshotEventMsg(session.session_id, method.value, phase=phase.value)
        if method is CaptureMethod.VOICE_ASSISTANT and not self.voice_event_logging:
            return [stamped]  # acknowledged but kept out of the session log
        session.screenshot_events.append(event)
        if self.sender_notifications and self.notify_sender is not None:
            self.notify_sender(session.envelope.sender_id, stamped)
        return [stamped]

    def end_session(self, session_id: str) -> None:
        session = self._session(session_id)
        session.open = False

    def export_session_log(self, session_id: str) -> TrialRecord:
        session = self.sessions.get(session_id)
        if session is None:
            raise RelayError("UnknownSession", f"no session {session_id!r}")
        if session.open:
            raise RelayError("SessionStillOpen", "end the session before exporting its log")
        return TrialRecord(
            session_id=session.session_id,
            gesture=session.envelope.required_gesture,
            events=tuple(session.screenshot_events),
            ended_without_attempt=not session.screenshot_events,
        )
