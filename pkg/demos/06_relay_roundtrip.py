"""End-to-end relay walkthrough, in process.

Compose gesture-gated media, open an unlock session, stream landmark frames,
and watch the gate meter out the payload: chunks flow only while the gate is
Unlocked, a relock freezes them mid-payload, and a fresh unlock starts the
payload over. Capture attempts get stamped with the server-side phase.

(The same flow runs over WebSocket against `handsoff serve`; the wire
messages are identical.)
"""

import base64
import tempfile

from handsoff.accounting import classify_trial
from handsoff.classifier import GestureClass
from handsoff.landmarks import LandmarkFrame, format_frame_line
from handsoff.poses import synthesize_pose
from handsoff.protocol import (
    Compose,
    GateStateMsg,
    LandmarkFrameMsg,
    MediaChunk,
    ScreenshotEventMsg,
    UnlockRequest,
)
from handsoff.relay import RelayCore

payload = b"\x89PNG...pretend-image..." * 9000  # ~200 KiB -> 4 chunks
core = RelayCore(tempfile.mkdtemp(prefix="handsoff-demo-"))

ack = core.handle_compose(
    Compose(
        sender_id="alice",
        recipient_id="bob",
        mime="image/png",
        required_gesture="binoculars",
        gate_config={"dwell_frames": 2, "grace_frames": 2},
        payload_b64=base64.b64encode(payload).decode(),
        context={"content": "Silly", "relationship": "Close", "location": "Private"},
    )
)
print(f"composed media {ack.media_id[:8]}... gated on binoculars")

session_id, intro = core.open_session(UnlockRequest(ack.media_id, "bob"))
print(f"session {session_id[:8]}...: first message is {type(intro[0]).__name__}")

ts = 0


def send(gesture, label):
    global ts
    pose = synthesize_pose(gesture, ts // 33, 0.0)
    out = core.handle_frame(LandmarkFrameMsg(session_id, format_frame_line(LandmarkFrame(ts, pose.hands))))
    ts += 33
    for msg in out:
        if isinstance(msg, GateStateMsg):
            print(f"  [{label}] gate -> {msg.phase} (confidence {msg.confidence:.2f})")
        elif isinstance(msg, MediaChunk):
            print(f"  [{label}] chunk {msg.seq + 1}/{msg.total}")


for i in range(4):
    send(GestureClass.BINOCULARS, "gesture")

(event,) = core.handle_screenshot_event(ScreenshotEventMsg(session_id, "ButtonPress"))
print(f"capture attempt while revealed -> stamped {event.phase}")

for i in range(3):
    send(GestureClass.BACKGROUND, "hands gone")
print("chunk stream froze when the gate relocked")

(event,) = core.handle_screenshot_event(ScreenshotEventMsg(session_id, "ButtonPress"))
print(f"capture attempt while covered  -> stamped {event.phase}")

for i in range(6):
    send(GestureClass.BINOCULARS, "again")
print("fresh unlock retransmitted from chunk 1")

core.end_session(session_id)
record = core.export_session_log(session_id)
print(f"\ntrial record: {len(record.events)} capture events -> {classify_trial(record).value}")
