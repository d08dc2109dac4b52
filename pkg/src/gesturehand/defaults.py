"""Access to the shipped datasets (hand spec, gesture set, task scripts, suite).

The data directory can be overridden with the GESTUREHAND_DATA_DIR environment
variable, which is how alternative hand descriptions are swapped in without
code changes.
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .actuation import CouplingConfig
from .gestures import GestureSet, load_gesture_set
from .hand_model import HandSpec, load_hand_spec

DATA_DIR_ENV = "GESTUREHAND_DATA_DIR"


def default_data_dir() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("gesturehand") / "data"))


def default_hand_spec_path() -> Path:
    return default_data_dir() / "hand_spec.json"


def default_gestures_path() -> Path:
    return default_data_dir() / "gestures.json"


def default_suite_path() -> Path:
    return default_data_dir() / "suite.json"


def default_scripts_dir() -> Path:
    return default_data_dir() / "scripts"


def load_default_hand_spec() -> HandSpec:
    return load_hand_spec(default_hand_spec_path())


def load_default_gesture_set(spec: HandSpec) -> GestureSet:
    return load_gesture_set(default_gestures_path(), spec)


def default_coupling(spec: HandSpec) -> CouplingConfig:
    return CouplingConfig.default_from_spec(spec)
