"""Context-driven gesture recommendation.

Senders pick a required gesture per sharing context: how serious the
content is, how close the recipient, where it will be viewed. Protective
contexts weight deterrence; casual ones weight social fit, flipping to
playfulness in private.
"""

import itertools

from handsoff.envelope import (
    Content,
    ContextAxes,
    DEFAULT_PROFILES,
    Location,
    Relationship,
    recommend_gesture,
)

print("default gesture profiles (deterrence / social acceptability):")
for p in DEFAULT_PROFILES:
    print(f"  {p.gesture.value:11s} {p.deterrence:.2f} / {p.social_acceptability:.2f}")

print("\nranking per context:")
for content, relationship, location in itertools.product(Content, Relationship, Location):
    axes = ContextAxes(content, relationship, location)
    ranking = recommend_gesture(axes)
    label = f"{content.value:7s} {relationship.value:8s} {location.value:7s}"
    print(f"  {label} -> {' > '.join(g.value for g in ranking)}")

serious_public = ContextAxes(Content.SERIOUS, Relationship.NOT_CLOSE, Location.PUBLIC)
silly_private = ContextAxes(Content.SILLY, Relationship.CLOSE, Location.PRIVATE)
print(f"\nserious + not close + public leads with {recommend_gesture(serious_public)[0].value}")
print(f"silly + close + private leads with {recommend_gesture(silly_private)[0].value}")
