import pytest

from handsoff.classifier import GestureClass, UNLOCK_GESTURES
from handsoff.poses import synthesize_pose


@pytest.fixture(scope="session")
def canonical_frames():
    return {g: synthesize_pose(g, 0, 0.0) for g in GestureClass}


@pytest.fixture(scope="session")
def unlock_gestures():
    return UNLOCK_GESTURES
