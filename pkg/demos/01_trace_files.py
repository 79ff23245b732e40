"""Landmark frames, synthetic poses, and the trace file format.

A trace is a timestamped stream of hand-landmark frames (21 keypoints per
hand, at most two hands). The synthesizer turns a gesture name into a
deterministic canonical pose; jitter produces endless noisy variants of it.
"""

from handsoff import GestureClass, parse_trace, synthesize_pose, write_trace
from handsoff.landmarks import LandmarkFrame, Trace

# A canonical pose: exact same frame every time at jitter 0.
frame = synthesize_pose(GestureClass.INTERLACE, seed=0, jitter_sigma=0.0)
print(f"interlace template: {len(frame.hands)} hands")
for hand in frame.hands:
    tips = [hand.keypoints[i] for i in (4, 8, 12, 16, 20)]
    print(f"  {hand.handedness:5s} fingertip xs: {[round(k.x, 3) for k in tips]}")

# Jittered variants are seeded, so fixture corpora are reproducible.
noisy = synthesize_pose(GestureClass.INTERLACE, seed=42, jitter_sigma=0.01)
assert noisy == synthesize_pose(GestureClass.INTERLACE, seed=42, jitter_sigma=0.01)

# Assemble a 2-second trace at 30 fps and round-trip it through the file
# format: parse(write(t)) == t, byte for byte.
frames = tuple(
    LandmarkFrame(i * 1000 // 30, synthesize_pose(GestureClass.WAVE, i, 0.005).hands)
    for i in range(60)
)
trace = Trace(frames, nominal_fps=30)
data = write_trace(trace)
print(f"\ntrace file: {len(data)} bytes, {len(trace.frames)} frames")
print("header:", data.split(b"\n", 1)[0].decode())
assert parse_trace(data) == trace
assert write_trace(parse_trace(data)) == data
print("round trip: identical")
