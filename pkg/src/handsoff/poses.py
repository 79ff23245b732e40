"""Deterministic synthetic hand poses used as classifier fixtures.

Templates are authored parametrically (wrist position, palm axis, per-finger
curl) and frozen by the constants below; they are the ground truth the
geometric classifier is tested against. `synthesize_pose` is a pure function
of (gesture, seed, jitter_sigma).
"""

from __future__ import annotations

import math

import numpy as np

from .classifier import GestureClass
from .landmarks import FINGER_CHAINS, KEYPOINT_COUNT, WRIST, Hand, Keypoint, LandmarkFrame

# (mcp distance, fan angle deg, segment lengths) per finger, in hand-scale
# units where 1.0 = wrist-to-middle-MCP distance.
_FINGER_GEOMETRY = {
    "index": (1.00, 16.0, (0.45, 0.28, 0.22)),
    "middle": (1.02, 0.0, (0.50, 0.30, 0.24)),
    "ring": (0.97, -14.0, (0.46, 0.29, 0.22)),
    "pinky": (0.88, -28.0, (0.36, 0.22, 0.19)),
}
_THUMB_CMC_DIST = 0.35
_THUMB_CMC_ANGLE = 48.0
_THUMB_SEGMENTS = (0.40, 0.32, 0.26)


def _unit(angle_deg: float) -> tuple[float, float]:
    rad = math.radians(angle_deg)
    return math.cos(rad), math.sin(rad)


def _angle_diff(a: float, b: float) -> float:
    return (a - b + 180.0) % 360.0 - 180.0


def _walk(start: tuple[float, float], angle_deg: float, dist: float) -> tuple[float, float]:
    dx, dy = _unit(angle_deg)
    return start[0] + dx * dist, start[1] + dy * dist


def _build_hand(
    handedness: str,
    wrist: tuple[float, float],
    scale: float,
    axis_deg: float,
    curls: dict[str, float],
    fan_scale: float = 1.0,
    thumb_dir_deg: float | None = None,
    thumb_curl: float = 0.0,
) -> list[tuple[float, float]]:
    """Return 21 (x, y) positions. axis_deg is the wrist-to-middle-MCP
    direction in image coordinates (0 = +x, 90 = +y i.e. downward)."""
    sign = 1.0 if handedness == "Right" else -1.0
    pts: list[tuple[float, float] | None] = [None] * KEYPOINT_COUNT
    pts[WRIST] = wrist

    for name, (mcp_dist, fan, segments) in _FINGER_GEOMETRY.items():
        chain = FINGER_CHAINS[name]
        angle = axis_deg + sign * fan * fan_scale
        mcp = _walk(wrist, angle, mcp_dist * scale)
        pts[chain[0]] = mcp
        curl = curls.get(name, 0.0)
        # Base knuckle flexion plus progressive per-joint flexion; in this 2D
        # projection a curl sweeps the segments toward the palm interior.
        seg_angle = axis_deg + sign * fan * 0.5 * fan_scale + sign * curl * 60.0
        pos = mcp
        for joint, seg in zip(chain[1:], segments):
            pos = _walk(pos, seg_angle, seg * scale)
            pts[joint] = pos
            seg_angle += sign * curl * 85.0

    thumb_chain = FINGER_CHAINS["thumb"]
    if thumb_dir_deg is not None:
        # Keep the CMC between the palm axis and the thumb so the chain does
        # not double back across the wrist.
        half = axis_deg + _angle_diff(thumb_dir_deg, axis_deg) / 2
        cmc = _walk(wrist, half, _THUMB_CMC_DIST * scale)
    else:
        cmc = _walk(wrist, axis_deg + sign * _THUMB_CMC_ANGLE, _THUMB_CMC_DIST * scale)
    pts[thumb_chain[0]] = cmc
    t_angle = thumb_dir_deg if thumb_dir_deg is not None else axis_deg + sign * 62.0
    pos = cmc
    for joint, seg in zip(thumb_chain[1:], _THUMB_SEGMENTS):
        pos = _walk(pos, t_angle, seg * scale)
        pts[joint] = pos
        t_angle += sign * thumb_curl * 70.0

    return [p for p in pts if p is not None]


def _column_hand(
    handedness: str,
    wrist: tuple[float, float],
    finger_xs: dict[str, float],
    tip_y: float,
    mcp_y: float,
) -> list[tuple[float, float]]:
    """Hand whose fingers rise as vertical columns at explicit x positions
    (used for interleaved poses where tip ordering is the point)."""
    pts: list[tuple[float, float] | None] = [None] * KEYPOINT_COUNT
    pts[WRIST] = wrist
    for name, chain in FINGER_CHAINS.items():
        x = finger_xs[name]
        if name == "thumb":
            ys = (wrist[1] - 0.35 * (wrist[1] - mcp_y), mcp_y, (mcp_y + tip_y) / 2, tip_y)
        else:
            span = mcp_y - tip_y
            ys = (mcp_y, mcp_y - span * 0.55, mcp_y - span * 0.80, tip_y)
        for joint, y in zip(chain, ys):
            pts[joint] = (x, y)
    return [p for p in pts if p is not None]


def _wave_hands() -> list[tuple[str, list[tuple[float, float]]]]:
    open_curl = {f: 0.03 for f in _FINGER_GEOMETRY}
    return [
        ("Left", _build_hand("Left", (0.30, 0.78), 0.12, -90.0, open_curl, thumb_curl=0.04)),
        ("Right", _build_hand("Right", (0.70, 0.78), 0.12, -90.0, open_curl, thumb_curl=0.04)),
    ]


def _frame_hands() -> list[tuple[str, list[tuple[float, float]]]]:
    curls = {"index": 0.0, "middle": 0.95, "ring": 0.95, "pinky": 0.95}
    fan_scale = 0.4
    # Thumbs sit exactly perpendicular to the index direction so the two
    # corners are true opposing right angles.
    index_fan = _FINGER_GEOMETRY["index"][1] * 0.5 * fan_scale
    left = _build_hand(
        "Left", (0.34, 0.78), 0.115, -90.0, curls, fan_scale=fan_scale,
        thumb_dir_deg=-90.0 - index_fan + 90.0,
    )
    right = _build_hand(
        "Right", (0.66, 0.26), 0.115, 90.0, curls, fan_scale=fan_scale,
        thumb_dir_deg=90.0 + index_fan + 90.0,
    )
    return [("Left", left), ("Right", right)]


def _interlace_hands() -> list[tuple[str, list[tuple[float, float]]]]:
    # Fingertip x positions alternate Left/Right across the clasp.
    step = 0.03
    xs = [0.365 + step * k for k in range(10)]
    left_xs = {"pinky": xs[0], "ring": xs[2], "middle": xs[4], "index": xs[6], "thumb": xs[8]}
    right_xs = {"pinky": xs[9], "ring": xs[7], "middle": xs[5], "index": xs[3], "thumb": xs[1]}
    left = _column_hand("Left", (0.468, 0.80), left_xs, tip_y=0.54, mcp_y=0.71)
    right = _column_hand("Right", (0.532, 0.80), right_xs, tip_y=0.545, mcp_y=0.715)
    return [("Left", left), ("Right", right)]


def _binoculars_hands() -> list[tuple[str, list[tuple[float, float]]]]:
    curls = {"index": 0.55, "middle": 1.0, "ring": 1.0, "pinky": 1.0}
    hands = []
    for side, wx in (("Left", 0.40), ("Right", 0.60)):
        pts = _build_hand(side, (wx, 0.72), 0.11, -90.0, curls, thumb_curl=0.35)
        index_tip = pts[FINGER_CHAINS["index"][-1]]
        # Close the thumb-index ring.
        pts[FINGER_CHAINS["thumb"][-1]] = (index_tip[0] + 0.004, index_tip[1] + 0.004)
        hands.append((side, pts))
    return hands


def _background_hands() -> list[tuple[str, list[tuple[float, float]]]]:
    relaxed = {f: 0.12 for f in _FINGER_GEOMETRY}
    return [("Right", _build_hand("Right", (0.52, 0.75), 0.12, -78.0, relaxed, thumb_curl=0.1))]


_TEMPLATE_BUILDERS = {
    GestureClass.WAVE: _wave_hands,
    GestureClass.FRAME: _frame_hands,
    GestureClass.INTERLACE: _interlace_hands,
    GestureClass.BINOCULARS: _binoculars_hands,
    GestureClass.BACKGROUND: _background_hands,
}

_CLASS_INDEX = {g: i for i, g in enumerate(GestureClass)}


def merged_clasp_hand() -> list[tuple[str, list[tuple[float, float]]]]:
    """Single-hand look of interlaced hands as trackers merge them: fingers
    half curled with tightly bunched tips. Used as a confuser fixture."""
    curls = {f: 0.62 for f in _FINGER_GEOMETRY}
    return [
        (
            "Right",
            _build_hand("Right", (0.50, 0.78), 0.12, -90.0, curls, fan_scale=0.25, thumb_curl=0.7),
        )
    ]


def _to_frame(hands_pts: list[tuple[str, list[tuple[float, float]]]], timestamp_ms: int = 0) -> LandmarkFrame:
    hands = tuple(
        Hand(side, tuple(Keypoint(_clamp01(x), _clamp01(y), 0.0) for x, y in pts))
        for side, pts in hands_pts
    )
    return LandmarkFrame(timestamp_ms, hands)


def _clamp01(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


def synthesize_pose(
    gesture: GestureClass, seed: int, jitter_sigma: float = 0.0, timestamp_ms: int = 0
) -> LandmarkFrame:
    """Deterministic synthetic frame for a gesture.

    jitter_sigma 0 returns the canonical template exactly (seed is then
    irrelevant); otherwise keypoints are perturbed with seeded Gaussian noise
    and clamped back into the unit square.
    """
    if jitter_sigma < 0:
        raise ValueError("jitter_sigma must be non-negative")
    hands_pts = _TEMPLATE_BUILDERS[gesture]()
    if jitter_sigma == 0.0:
        return _to_frame(hands_pts, timestamp_ms)
    return jitter_frame(hands_pts, _CLASS_INDEX[gesture], seed, jitter_sigma, timestamp_ms)


def jitter_frame(
    hands_pts: list[tuple[str, list[tuple[float, float]]]],
    stream: int,
    seed: int,
    sigma: float,
    timestamp_ms: int = 0,
) -> LandmarkFrame:
    rng = np.random.default_rng([stream, seed & 0xFFFFFFFF, seed >> 32 & 0xFFFFFFFF])
    hands = []
    for side, pts in hands_pts:
        noise = rng.normal(0.0, sigma, size=(len(pts), 3))
        keypoints = tuple(
            Keypoint(_clamp01(x + float(n[0])), _clamp01(y + float(n[1])), float(n[2]))
            for (x, y), n in zip(pts, noise)
        )
        hands.append(Hand(side, keypoints))
    return LandmarkFrame(timestamp_ms, tuple(hands))
