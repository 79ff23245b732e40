"""Hand-landmark frames and the line-delimited trace file format.

A trace file is UTF-8 text. The first line is a header::

    HOTRACE v1 fps=<number>

Every following line is one frame::

    <timestamp_ms>;<hand_count>;<L|R>:<x0>,<y0>,<z0>|...|<x20>,<y20>,<z20>[;<second hand>]

Coordinates are normalized image coordinates (x, y in [0, 1], z is relative
depth). Keypoints follow the standard 21-point hand topology: index 0 is the
wrist, 4/8/12/16/20 are the thumb/index/middle/ring/pinky tips, the rest are
the joints in between.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

WRIST = 0
THUMB_CMC, THUMB_MCP, THUMB_IP, THUMB_TIP = 1, 2, 3, 4
INDEX_MCP, INDEX_PIP, INDEX_DIP, INDEX_TIP = 5, 6, 7, 8
MIDDLE_MCP, MIDDLE_PIP, MIDDLE_DIP, MIDDLE_TIP = 9, 10, 11, 12
RING_MCP, RING_PIP, RING_DIP, RING_TIP = 13, 14, 15, 16
PINKY_MCP, PINKY_PIP, PINKY_DIP, PINKY_TIP = 17, 18, 19, 20

KEYPOINT_COUNT = 21
FINGERTIPS = (THUMB_TIP, INDEX_TIP, MIDDLE_TIP, RING_TIP, PINKY_TIP)

# Per-finger joint chains, wrist excluded. Used for extension measures and by
# the pose synthesizer.
FINGER_CHAINS = {
    "thumb": (THUMB_CMC, THUMB_MCP, THUMB_IP, THUMB_TIP),
    "index": (INDEX_MCP, INDEX_PIP, INDEX_DIP, INDEX_TIP),
    "middle": (MIDDLE_MCP, MIDDLE_PIP, MIDDLE_DIP, MIDDLE_TIP),
    "ring": (RING_MCP, RING_PIP, RING_DIP, RING_TIP),
    "pinky": (PINKY_MCP, PINKY_PIP, PINKY_DIP, PINKY_TIP),
}

TRACE_HEADER_PREFIX = "HOTRACE v1 fps="


class TraceError(ValueError):
    """Base class for trace parsing/validation failures."""


class MalformedRecord(TraceError):
    """A frame record that cannot be decoded (syntax, counts, ranges)."""


class NonMonotonicTimestamp(TraceError):
    """Frame timestamps must strictly increase within a trace."""


@dataclass(frozen=True)
class Keypoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)):
            raise ValueError(f"keypoint components must be finite, got {self}")
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise ValueError(f"keypoint x/y must lie in [0, 1], got ({self.x}, {self.y})")


@dataclass(frozen=True)
class Hand:
    handedness: str  # "Left" | "Right"
    keypoints: tuple[Keypoint, ...]

    def __post_init__(self):
        if self.handedness not in ("Left", "Right"):
            raise ValueError(f"handedness must be 'Left' or 'Right', got {self.handedness!r}")
        object.__setattr__(self, "keypoints", tuple(self.keypoints))
        if len(self.keypoints) != KEYPOINT_COUNT:
            raise ValueError(f"a hand has exactly {KEYPOINT_COUNT} keypoints, got {len(self.keypoints)}")


@dataclass(frozen=True)
class LandmarkFrame:
    timestamp_ms: int
    hands: tuple[Hand, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not isinstance(self.timestamp_ms, int) or self.timestamp_ms < 0:
            raise ValueError(f"timestamp_ms must be a non-negative integer, got {self.timestamp_ms!r}")
        object.__setattr__(self, "hands", tuple(self.hands))
        if len(self.hands) > 2:
            raise ValueError(f"a frame holds at most two hands, got {len(self.hands)}")
        sides = [h.handedness for h in self.hands]
        if len(set(sides)) != len(sides):
            raise ValueError("a frame holds at most one Left and one Right hand")


@dataclass(frozen=True)
class Trace:
    frames: tuple[LandmarkFrame, ...]
    nominal_fps: float = 30.0

    def __post_init__(self):
        object.__setattr__(self, "frames", tuple(self.frames))
        object.__setattr__(self, "nominal_fps", float(self.nominal_fps))
        if not (self.nominal_fps > 0 and math.isfinite(self.nominal_fps)):
            raise ValueError(f"nominal_fps must be a positive finite number, got {self.nominal_fps}")
        prev = None
        for f in self.frames:
            if prev is not None and f.timestamp_ms <= prev:
                raise NonMonotonicTimestamp(
                    f"timestamps must strictly increase ({prev} then {f.timestamp_ms})"
                )
            prev = f.timestamp_ms

    def fps_consistent(self, tolerance: float = 0.5) -> bool:
        """True when every inter-frame gap is within nominal_fps ± tolerance.

        Advisory: generated fixtures always satisfy it, but parsing does not
        reject irregular traces (the parse error set is closed).
        """
        nominal = 1000.0 / self.nominal_fps
        lo, hi = nominal * (1 - tolerance), nominal * (1 + tolerance)
        return all(
            lo <= b.timestamp_ms - a.timestamp_ms <= hi
            for a, b in zip(self.frames, self.frames[1:])
        )


def _format_float(v: float) -> str:
    # repr round-trips exactly through float(); that carries the
    # parse(write(t)) == t guarantee.
    return repr(float(v))


def _format_hand(hand: Hand) -> str:
    side = "L" if hand.handedness == "Left" else "R"
    pts = "|".join(
        f"{_format_float(k.x)},{_format_float(k.y)},{_format_float(k.z)}" for k in hand.keypoints
    )
    return f"{side}:{pts}"


def format_frame_line(frame: LandmarkFrame) -> str:
    """One frame in the trace-record format (also the streamed wire form)."""
    parts = [str(frame.timestamp_ms), str(len(frame.hands)), ""]
    if frame.hands:
        parts[2:] = [_format_hand(h) for h in frame.hands]
    return ";".join(parts)


def write_trace(trace: Trace) -> bytes:
    """Serialize a trace to the line-delimited file format."""
    lines = [f"{TRACE_HEADER_PREFIX}{_format_float(trace.nominal_fps)}"]
    prev = None
    for frame in trace.frames:
        if prev is not None and frame.timestamp_ms <= prev:
            raise NonMonotonicTimestamp(
                f"timestamps must strictly increase ({prev} then {frame.timestamp_ms})"
            )
        prev = frame.timestamp_ms
        lines.append(format_frame_line(frame))
    return ("\n".join(lines) + "\n").encode("utf-8")


def _parse_hand(text: str, lineno: int) -> Hand:
    if len(text) < 2 or text[1] != ":" or text[0] not in "LR":
        raise MalformedRecord(f"line {lineno}: bad hand prefix in {text[:12]!r}")
    side = "Left" if text[0] == "L" else "Right"
    raw_points = text[2:].split("|")
    if len(raw_points) != KEYPOINT_COUNT:
        raise MalformedRecord(
            f"line {lineno}: expected {KEYPOINT_COUNT} keypoints, got {len(raw_points)}"
        )
    keypoints = []
    for raw in raw_points:
        comps = raw.split(",")
        if len(comps) != 3:
            raise MalformedRecord(f"line {lineno}: keypoint needs 3 components, got {raw!r}")
        try:
            x, y, z = (float(c) for c in comps)
        except ValueError:
            raise MalformedRecord(f"line {lineno}: non-numeric keypoint component in {raw!r}") from None
        try:
            keypoints.append(Keypoint(x, y, z))
        except ValueError as exc:
            raise MalformedRecord(f"line {lineno}: {exc}") from None
    try:
        return Hand(side, tuple(keypoints))
    except ValueError as exc:
        raise MalformedRecord(f"line {lineno}: {exc}") from None


def parse_frame_line(line: str, lineno: int = 0) -> LandmarkFrame:
    """Parse a single frame record (also the wire form of a streamed frame)."""
    parts = line.rstrip("\n").split(";")
    if len(parts) < 3:
        raise MalformedRecord(f"line {lineno}: expected '<ts>;<count>;...', got {line!r}")
    try:
        timestamp_ms = int(parts[0])
    except ValueError:
        raise MalformedRecord(f"line {lineno}: bad timestamp {parts[0]!r}") from None
    try:
        count = int(parts[1])
    except ValueError:
        raise MalformedRecord(f"line {lineno}: bad hand count {parts[1]!r}") from None
    hand_fields = parts[2:]
    if count == 0:
        if hand_fields != [""]:
            raise MalformedRecord(f"line {lineno}: zero-hand record carries hand data")
        hands: tuple[Hand, ...] = ()
    else:
        if len(hand_fields) != count:
            raise MalformedRecord(
                f"line {lineno}: declared {count} hands but found {len(hand_fields)}"
            )
        hands = tuple(_parse_hand(h, lineno) for h in hand_fields)
    try:
        return LandmarkFrame(timestamp_ms, hands)
    except NonMonotonicTimestamp:
        raise
    except ValueError as exc:
        raise MalformedRecord(f"line {lineno}: {exc}") from None


def parse_trace(data: bytes) -> Trace:
    """Parse trace-file content. Malformed records are rejected, not skipped.

    Empty input is the identity case: a trace with zero frames at the
    default frame rate.
    """
    text = data.decode("utf-8")
    if text.strip() == "":
        return Trace((), 30.0)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    header = lines[0]
    if not header.startswith(TRACE_HEADER_PREFIX):
        raise MalformedRecord(f"bad header {header!r}")
    try:
        fps = float(header[len(TRACE_HEADER_PREFIX):])
    except ValueError:
        raise MalformedRecord(f"bad fps in header {header!r}") from None
    frames = []
    prev = None
    for lineno, line in enumerate(lines[1:], start=2):
        frame = parse_frame_line(line, lineno)
        if prev is not None and frame.timestamp_ms <= prev:
            raise NonMonotonicTimestamp(
                f"line {lineno}: timestamp {frame.timestamp_ms} does not increase past {prev}"
            )
        prev = frame.timestamp_ms
        frames.append(frame)
    return Trace(tuple(frames), fps)
