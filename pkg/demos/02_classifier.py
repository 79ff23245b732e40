"""Geometric gesture classification over landmark frames.

Each gesture gets one rule built from hand geometry; the winner above its
threshold is the classification, with Background as the rejection class.
The interesting wrinkle is interlace: interlaced hands often merge into a
single tracked hand, so interlace alone may fire on one hand, which both
keeps the gesture usable and makes it the least precise of the four.
"""

import collections

from handsoff import GestureClass, classify, extract_features, synthesize_pose
from handsoff.landmarks import LandmarkFrame
from handsoff.poses import jitter_frame, merged_clasp_hand

print("canonical templates:")
for gesture in GestureClass:
    frame = synthesize_pose(gesture, 0, 0.0)
    c = classify(frame)
    print(f"  {gesture.value:11s} -> {c.gesture.value:11s} confidence {c.confidence:.3f}")

# Feature view of the wave template: two open palms far apart.
fv = extract_features(synthesize_pose(GestureClass.WAVE, 0, 0.0))
print("\nwave features:")
print(f"  mean extension per hand: {[round(sum(e) / 5, 2) for e in fv.finger_extension]}")
print(f"  wrist distance {fv.inter_hand_distance:.2f}, interleave {fv.interleave_score:.2f}")

# Dropping one hand demotes every two-hand gesture to Background...
one_hand = LandmarkFrame(0, synthesize_pose(GestureClass.WAVE, 0, 0.0).hands[:1])
print(f"\nsingle open palm  -> {classify(one_hand).gesture.value} (wave needs two hands)")

# ...but a merged clasp still reads as interlace on one hand.
clasp = jitter_frame(merged_clasp_hand(), 99, seed=3, sigma=0.005)
print(f"merged-hand clasp -> {classify(clasp).gesture.value} (the interlace exception)")

# Accuracy under landmark noise, 200 seeded variants per gesture.
print("\naccuracy at jitter sigma 0.01:")
for gesture in GestureClass:
    counts = collections.Counter(
        classify(synthesize_pose(gesture, seed, 0.01)).gesture for seed in range(200)
    )
    print(f"  {gesture.value:11s} {counts[gesture] / 200:5.1%}  {dict((k.value, v) for k, v in counts.items())}")
