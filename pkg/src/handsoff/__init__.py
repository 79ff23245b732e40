"""Gesture-gated ephemeral media relay.

Media attached to a required hand gesture is revealed to its recipient only
while a live landmark stream sustains that gesture; capture attempts are
logged and reported either way.
"""

from .classifier import (
    Classification,
    ClassifierConfig,
    GestureClass,
    UNLOCK_GESTURES,
    classify,
    classify_trace,
    extract_features,
)
from .gate import GateConfig, GateEvent, GateState, detection_latency, run_gate, step
from .landmarks import (
    Hand,
    Keypoint,
    LandmarkFrame,
    MalformedRecord,
    NonMonotonicTimestamp,
    Trace,
    parse_trace,
    write_trace,
)
from .poses import synthesize_pose

__version__ = "0.1.0"
