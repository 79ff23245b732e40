"""The reveal/cover state machine: threshold, dwell, and grace.

Media shows only while the required gesture is being held. Dwell forces a
few consecutive qualifying frames before the first reveal; grace tolerates
short tracking dropouts so a borderline stream does not flicker the media
between covered and uncovered on every frame.
"""

import math

from handsoff import GateConfig, run_gate
from handsoff.classifier import Classification, GestureClass

WAVE = GestureClass.WAVE
config = GateConfig(required_gesture=WAVE)  # threshold 0.90, dwell 3, grace 5
print(f"gate: threshold {config.confidence_threshold}, dwell {config.dwell_frames}, grace {config.grace_frames}")


def as_stream(pattern: str):
    """'q' = matching gesture at confidence 0.95, '.' = nothing detected."""
    return [
        Classification(WAVE, 0.95, 2) if ch == "q" else Classification(GestureClass.BACKGROUND, 0.2, 0)
        for ch in pattern
    ]


pattern = "qqqqq..q.qq......qqq"
mask, events = run_gate(as_stream(pattern), config)
print("\nstream :", pattern)
print("reveal :", "".join("#" if r else "_" for r in mask))
for e in events:
    print(f"  {e.kind.value} at frame {e.frame_index}")

# A memoryless gate would toggle ~N/2 times on a stream that straddles the
# threshold; hysteresis caps relocks far below that.
n = 600
oscillating = [Classification(WAVE, 0.91 if i % 2 == 0 else 0.89, 2) for i in range(n)]
_, osc_events = run_gate(oscillating, config)
relocks = sum(1 for e in osc_events if e.kind.value == "Relocked")
bound = math.ceil(n / (config.dwell_frames + config.grace_frames + 1))
print(f"\noscillating {n}-frame stream at threshold +/- 0.01:")
print(f"  relocks {relocks} (bound {bound}, memoryless gate would hit ~{n // 2})")
