"""Kinematic simulator and choreography engine for a 13-DOA anthropomorphic hand.

The hand has 20 joints (five digits, four angles each) driven by 13 actuators
through a fixed underactuation coupling. This package models the joint-space
ROM envelopes, forward kinematics, tendon transmission, a 62-gesture base
library, key-frame-interpolated manipulation scripts, and a three-level
kinematic benchmark, plus a CLI and a small HTTP service for the companion UI.
"""

from .actuation import (
    ACTUATOR_ORDER,
    ActuatorId,
    ActuatorVector,
    CouplingConfig,
    LinearFit,
    TendonModel,
    excursion,
    expand,
    export_actuator_csv,
    fit_linear,
    project,
)
from .benchmark import (
    BenchmarkLevel,
    Budget,
    SuiteReport,
    TaskDef,
    TaskResult,
    load_suite,
    run_level1,
    run_suite,
    run_task,
)
from .choreography import (
    KeyFrame,
    ManipulationScript,
    Trajectory,
    TrajectoryMetrics,
    compile_script,
    export_trajectory_csv,
    interpolate_segment,
    joint_displacement_series,
    load_script,
    trajectory_metrics,
    validate_trajectory,
)
from .errors import (
    CompileError,
    ConfigurationError,
    FitError,
    GestureHandError,
    GestureNotFoundError,
    GestureValidationError,
    SchemaError,
)
from .gestures import (
    GestureCategory,
    GestureRecord,
    GestureSet,
    find_gesture,
    kapandji_score,
    load_gesture_set,
    pose_executability,
)
from .hand_model import (
    AngleInterval,
    DigitId,
    HandPose,
    HandSpec,
    JOINT_ORDER,
    JointRole,
    JointSpec,
    RomViolation,
    SpiralFit,
    fingertip_trajectory,
    flexion_plane_coords,
    forward_kinematics,
    load_hand_spec,
    log_spiral_fit,
    rom_coverage,
    validate_pose,
)

__version__ = "0.1.0"
