"""Rule-based geometric gesture classification over landmark frames.

Each gesture has one scoring rule built from hand geometry (finger extension,
fingertip interleaving, thumb-index ring closure, corner angles). The winner
above its threshold is returned; otherwise the frame is Background. Rules are
handedness-agnostic: mirrored poses classify identically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .landmarks import (
    FINGER_CHAINS,
    FINGERTIPS,
    INDEX_TIP,
    MIDDLE_MCP,
    THUMB_TIP,
    WRIST,
    Hand,
    LandmarkFrame,
    Trace,
)


class GestureClass(enum.Enum):
    WAVE = "wave"
    FRAME = "frame"
    INTERLACE = "interlace"
    BINOCULARS = "binoculars"
    BACKGROUND = "background"

    def __str__(self) -> str:
        return self.value


UNLOCK_GESTURES = (
    GestureClass.WAVE,
    GestureClass.FRAME,
    GestureClass.INTERLACE,
    GestureClass.BINOCULARS,
)

# Most-specific geometry first; breaks exact score ties deterministically.
_TIE_PRIORITY = (
    GestureClass.INTERLACE,
    GestureClass.BINOCULARS,
    GestureClass.FRAME,
    GestureClass.WAVE,
)

# Calibration knots mapping raw rule scores to confidences; canonical
# templates land at raw >= 0.9 and therefore at confidence >= 0.95.
_CALIBRATION = ((0.0, 0.0), (0.5, 0.45), (0.75, 0.85), (0.85, 0.95), (1.0, 1.0))


def _clamp01(v: float) -> float:
    return 0.0 if v < 0.0 else 1.0 if v > 1.0 else v


def calibrate(raw: float) -> float:
    """Piecewise-linear confidence calibration, monotone on [0, 1]."""
    raw = _clamp01(raw)
    for (x0, y0), (x1, y1) in zip(_CALIBRATION, _CALIBRATION[1:]):
        if raw <= x1:
            return y0 + (raw - x0) * (y1 - y0) / (x1 - x0)
    return 1.0


@dataclass(frozen=True)
class ClassifierConfig:
    """Per-gesture rule thresholds (calibrated scale) and hand requirements.

    Interlace is exempt from the two-hand requirement by default: interlaced
    hands routinely merge into a single tracked hand, so requiring two would
    make the gesture undetectable exactly when performed best.
    """

    thresholds: dict[GestureClass, float] = field(
        default_factory=lambda: {g: 0.5 for g in UNLOCK_GESTURES}
    )
    require_two_hands: dict[GestureClass, bool] = field(
        default_factory=lambda: {
            GestureClass.WAVE: True,
            GestureClass.FRAME: True,
            GestureClass.BINOCULARS: True,
            GestureClass.INTERLACE: False,
        }
    )

    def __post_init__(self):
        for g, t in self.thresholds.items():
            if not 0.0 <= t <= 1.0:
                raise ValueError(f"threshold for {g} must be in [0, 1], got {t}")

    def to_dict(self) -> dict:
        return {
            "thresholds": {g.value: t for g, t in self.thresholds.items()},
            "require_two_hands": {g.value: r for g, r in self.require_two_hands.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassifierConfig":
        cfg = cls()
        thresholds = dict(cfg.thresholds)
        require = dict(cfg.require_two_hands)
        for name, t in data.get("thresholds", {}).items():
            thresholds[GestureClass(name)] = float(t)
        for name, r in data.get("require_two_hands", {}).items():
            require[GestureClass(name)] = bool(r)
        return cls(thresholds, require)


@dataclass(frozen=True)
class Classification:
    gesture: GestureClass
    confidence: float
    hands_detected: int

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence must be in [0, 1], got {self.confidence}")
        if self.hands_detected not in (0, 1, 2):
            raise ValueError(f"hands_detected must be 0, 1 or 2, got {self.hands_detected}")


@dataclass(frozen=True)
class FeatureVector:
    """Geometric scores; per-hand entries keep a fixed two-slot layout and
    read 0 for absent hands."""

    finger_extension: tuple[tuple[float, ...], tuple[float, ...]]
    inter_hand_distance: float
    interleave_score: float
    aperture_score: tuple[float, float]
    frame_corner_score: float


_ZERO_EXT = (0.0, 0.0, 0.0, 0.0, 0.0)
_FINGER_ORDER = ("thumb", "index", "middle", "ring", "pinky")


def _dist(a, b) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def _hand_scale(hand: Hand) -> float:
    kp = hand.keypoints
    return max(_dist(kp[WRIST], kp[MIDDLE_MCP]), 1e-6)


def _finger_extensions(hand: Hand) -> tuple[float, ...]:
    # Reach of the tip from the wrist relative to the fully unrolled joint
    # chain; ~1 for a straight finger, ~0.5 half curled, ~0.35 at full curl.
    kp = hand.keypoints
    wrist = kp[WRIST]
    out = []
    for name in _FINGER_ORDER:
        chain = FINGER_CHAINS[name]
        length = _dist(wrist, kp[chain[0]])
        for a, b in zip(chain, chain[1:]):
            length += _dist(kp[a], kp[b])
        reach = _dist(wrist, kp[chain[-1]])
        out.append(_clamp01((reach / max(length, 1e-6) - 0.50) / (0.92 - 0.50)))
    return tuple(out)


def _aperture(hand: Hand) -> float:
    # Thumb-tip to index-tip ring closure, saturating when closed.
    kp = hand.keypoints
    d = _dist(kp[THUMB_TIP], kp[INDEX_TIP]) / _hand_scale(hand)
    return _clamp01((0.70 - d) / 0.40)


def _interleave(hands: tuple[Hand, ...]) -> float:
    tips = []
    for i, hand in enumerate(hands):
        tips.extend((hand.keypoints[t].x, i) for t in FINGERTIPS)
    tips.sort()
    pairs = list(zip(tips, tips[1:]))
    alternating = sum(1 for (_, ha), (_, hb) in pairs if ha != hb)
    return alternating / len(pairs)


def _chain_direction(hand: Hand, chain: tuple[int, ...]) -> tuple[float, float]:
    # Outer-half minus inner-half midpoint: averaging joint pairs halves the
    # landmark noise compared with a tip-minus-knuckle difference.
    kp = hand.keypoints
    inner = kp[chain[0]], kp[chain[1]]
    outer = kp[chain[2]], kp[chain[3]]
    dx = (outer[0].x + outer[1].x - inner[0].x - inner[1].x) / 2
    dy = (outer[0].y + outer[1].y - inner[0].y - inner[1].y) / 2
    n = math.hypot(dx, dy)
    return (dx / n, dy / n) if n > 1e-9 else (0.0, 0.0)


def _corner(hand: Hand) -> tuple[float, tuple[float, float]]:
    """Right-angle quality of the thumb/index L-shape and its bisector."""
    ux, uy = _chain_direction(hand, FINGER_CHAINS["index"])
    vx, vy = _chain_direction(hand, FINGER_CHAINS["thumb"])
    if (ux, uy) == (0.0, 0.0) or (vx, vy) == (0.0, 0.0):
        return 0.0, (0.0, 0.0)
    angle = math.degrees(math.acos(max(-1.0, min(1.0, ux * vx + uy * vy))))
    # Quadratic falloff: flat near a true right angle, zero beyond 60 deg off.
    quality = _clamp01(1.0 - (abs(angle - 90.0) / 60.0) ** 2)
    bx, by = ux + vx, uy + vy
    bn = math.hypot(bx, by)
    bisector = (bx / bn, by / bn) if bn > 1e-9 else (0.0, 0.0)
    return quality, bisector


def _frame_corner(hands: tuple[Hand, ...]) -> float:
    q0, b0 = _corner(hands[0])
    q1, b1 = _corner(hands[1])
    opposition = _clamp01((1.0 - (b0[0] * b1[0] + b0[1] * b1[1])) / 2.0)
    return q0 * q1 * opposition


def extract_features(frame: LandmarkFrame) -> FeatureVector:
    """Pure geometric feature extraction; absent hands contribute zeros."""
    hands = frame.hands
    ext = [_ZERO_EXT, _ZERO_EXT]
    aperture = [0.0, 0.0]
    for i, hand in enumerate(hands):
        ext[i] = _finger_extensions(hand)
        aperture[i] = _aperture(hand)
    if len(hands) == 2:
        inter_hand = _dist(hands[0].keypoints[WRIST], hands[1].keypoints[WRIST])
        interleave = _interleave(hands)
        corner = _frame_corner(hands)
    else:
        inter_hand, interleave, corner = 0.0, 0.0, 0.0
    return FeatureVector(
        finger_extension=(ext[0], ext[1]),
        inter_hand_distance=inter_hand,
        interleave_score=interleave,
        aperture_score=(aperture[0], aperture[1]),
        frame_corner_score=corner,
    )


def _tip_spread(hand: Hand) -> float:
    kp = hand.keypoints
    xs = [kp[t].x for t in FINGERTIPS]
    ys = [kp[t].y for t in FINGERTIPS]
    cx, cy = sum(xs) / 5, sum(ys) / 5
    rms = math.sqrt(sum((x - cx) ** 2 + (y - cy) ** 2 for x, y in zip(xs, ys)) / 5)
    return rms / _hand_scale(hand)


def _clasp_score(hand: Hand, mean_ext: float) -> float:
    # Single-hand interlace look: half-curled fingers with bunched tips.
    mid_curl = _clamp01(1.0 - abs(mean_ext - 0.45) / 0.40)
    compact = _clamp01((0.80 - _tip_spread(hand)) / 0.40)
    return mid_curl * compact


def raw_scores(frame: LandmarkFrame, fv: FeatureVector | None = None) -> dict[GestureClass, float]:
    """Uncalibrated rule scores; hand-count requirements are applied later."""
    fv = fv or extract_features(frame)
    hands = frame.hands
    scores = {g: 0.0 for g in UNLOCK_GESTURES}
    if not hands:
        return scores

    mean_ext = [sum(e) / 5 for e in fv.finger_extension[: len(hands)]]
    if len(hands) == 2:
        dw = fv.inter_hand_distance
        separation = _clamp01((dw - 0.15) / 0.10)
        closeness = _clamp01((0.30 - dw) / 0.20)
        adjacency = _clamp01((0.35 - dw) / 0.15)
        all_ext = sum(mean_ext) / 2
        scores[GestureClass.WAVE] = all_ext * separation
        ext0, ext1 = fv.finger_extension[0], fv.finger_extension[1]
        pointer = (ext0[0] + ext0[1] + ext1[0] + ext1[1]) / 4
        curled = 1.0 - (ext0[2] + ext0[3] + ext0[4] + ext1[2] + ext1[3] + ext1[4]) / 6
        scores[GestureClass.FRAME] = fv.frame_corner_score * pointer * curled
        scores[GestureClass.INTERLACE] = fv.interleave_score * closeness
        scores[GestureClass.BINOCULARS] = fv.aperture_score[0] * fv.aperture_score[1] * adjacency
    else:
        scores[GestureClass.INTERLACE] = _clasp_score(hands[0], mean_ext[0])
    return scores


def classify(frame: LandmarkFrame, config: ClassifierConfig | None = None) -> Classification:
    """Classify one frame; Background is the rejection class.

    The winning gesture is the eligible rule with the highest calibrated
    score above its threshold. Background confidence is 1 minus the best
    eligible score, so an empty frame is Background at confidence 1.
    """
    config = config or ClassifierConfig()
    hands_detected = len(frame.hands)
    raw = raw_scores(frame)
    winner = None
    winner_score = 0.0
    best_eligible = 0.0
    for g in _TIE_PRIORITY:
        required = 2 if config.require_two_hands.get(g, True) else 1
        if hands_detected < required:
            continue
        score = calibrate(raw[g])
        best_eligible = max(best_eligible, score)
        if score > config.thresholds.get(g, 0.5) and score > winner_score:
            winner, winner_score = g, score
    if winner is not None:
        return Classification(winner, winner_score, hands_detected)
    return Classification(GestureClass.BACKGROUND, 1.0 - best_eligible, hands_detected)


def classify_trace(trace: Trace, config: ClassifierConfig | None = None) -> list[Classification]:
    config = config or ClassifierConfig()
    return [classify(frame, config) for frame in trace.frames]
