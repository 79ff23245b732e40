"""In-process instrumented transport for relay tests.

Drives a RelayCore exactly like a connection handler would and replays the
ordered recipient-bound message stream, charging every MediaChunk byte to
whatever gate phase the stream said was current when the chunk was emitted.
"""

from __future__ import annotations

import base64
import random
from dataclasses import dataclass, field

from handsoff.classifier import GestureClass
from handsoff.landmarks import LandmarkFrame, format_frame_line
from handsoff.poses import synthesize_pose
from handsoff.protocol import (
    Compose,
    EnvelopeMeta,
    GateStateMsg,
    LandmarkFrameMsg,
    MediaChunk,
    ScreenshotEventMsg,
)
from handsoff.relay import RelayCore


def compose_media(
    core: RelayCore,
    payload: bytes,
    gesture: GestureClass = GestureClass.FRAME,
    sender="alice",
    recipient="bob",
    gate_config: dict | None = None,
    context: dict | None = None,
) -> str:
    ack = core.handle_compose(
        Compose(
            sender_id=sender,
            recipient_id=recipient,
            mime="image/png",
            required_gesture=gesture.value,
            gate_config=gate_config or {},
            payload_b64=base64.b64encode(payload).decode("ascii"),
            context=context,
        )
    )
    return ack.media_id


@dataclass
class InstrumentedStream:
    """Recipient-side view of one unlock session."""

    core: RelayCore
    session_id: str
    messages: list = field(default_factory=list)
    phase: str = "Locked"
    locked_chunk_bytes: int = 0  # leak counter: chunk bytes seen while Locked
    chunks: dict[int, bytes] = field(default_factory=dict)
    phase_changes: list[str] = field(default_factory=list)
    next_ts: int = 0

    def _consume(self, out) -> None:
        for msg in out:
            self.messages.append(msg)
            if isinstance(msg, GateStateMsg):
                if msg.phase != self.phase:
                    self.phase_changes.append(msg.phase)
                self.phase = msg.phase
            elif isinstance(msg, MediaChunk):
                data = base64.b64decode(msg.bytes_b64)
                if self.phase == "Locked":
                    self.locked_chunk_bytes += len(data)
                self.chunks[msg.seq] = data

    def send_frame(self, frame: LandmarkFrame) -> None:
        self._consume(
            self.core.handle_frame(LandmarkFrameMsg(self.session_id, format_frame_line(frame)))
        )

    def send_pose(self, gesture: GestureClass, seed: int = 0, jitter: float = 0.0) -> None:
        pose = synthesize_pose(gesture, seed, jitter)
        self.send_frame(LandmarkFrame(self.next_ts, pose.hands))
        self.next_ts += 33

    def send_screenshot(self, method="ButtonPress") -> ScreenshotEventMsg:
        out = self.core.handle_screenshot_event(ScreenshotEventMsg(self.session_id, method))
        self._consume(out)
        return out[0]

    def end(self) -> None:
        self.core.end_session(self.session_id)

    @property
    def media_chunks(self) -> list[MediaChunk]:
        return [m for m in self.messages if isinstance(m, MediaChunk)]

    def payload_once(self) -> bytes:
        total = {m.total for m in self.media_chunks}
        assert len(total) == 1
        return b"".join(self.chunks[i] for i in range(total.pop()))


def open_stream(core: RelayCore, media_id: str, recipient="bob") -> InstrumentedStream:
    from handsoff.protocol import UnlockRequest

    session_id, intro = core.open_session(UnlockRequest(media_id, recipient))
    stream = InstrumentedStream(core, session_id)
    # envelope metadata must precede everything else on the stream
    assert isinstance(intro[0], EnvelopeMeta)
    stream._consume(intro)
    return stream


def random_session_script(rng: random.Random, gesture: GestureClass) -> list[GestureClass]:
    """Random mix of matching poses, other gestures, and empty frames."""
    choices = [gesture, GestureClass.BACKGROUND, GestureClass.WAVE, GestureClass.FRAME]
    return [rng.choice(choices) for _ in range(rng.randint(5, 40))]
