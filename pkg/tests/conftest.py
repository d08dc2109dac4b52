import pytest

from gesturehand.defaults import (
    default_coupling,
    load_default_gesture_set,
    load_default_hand_spec,
)


@pytest.fixture(scope="session")
def spec():
    return load_default_hand_spec()


@pytest.fixture(scope="session")
def coupling(spec):
    return default_coupling(spec)


@pytest.fixture(scope="session")
def gesture_set(spec):
    return load_default_gesture_set(spec)
