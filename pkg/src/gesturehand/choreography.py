"""Key-frame scripts, linear interpolation, and trajectory diagnostics.

A manipulation is written as an ordered list of key frames (base gestures or
inline poses) with per-segment frame intervals. Compilation expands each
segment with componentwise linear interpolation over all 20 joint angles:
frame t of a segment is theta_i + (t/T) * (theta_next - theta_i) for
t = 1..T, with t = T short-circuited to the exact target pose so key frames
are reproduced bit-exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import CompileError, ConfigurationError, GestureNotFoundError, SchemaError
from .hand_model import (
    HandPose,
    HandSpec,
    JOINT_ORDER,
    RomViolation,
    validate_pose,
)
from .actuation import CouplingConfig, format_float, project
from .jsonio import read_json


@dataclass(frozen=True)
class KeyFrame:
    """One waypoint: a gesture id or an inline pose, plus the frames to reach it.

    ``interval_frames`` is None only for the first key frame of a script.
    """

    target: Union[str, HandPose]
    interval_frames: Optional[int] = None

    def __post_init__(self):
        if self.interval_frames is not None and self.interval_frames < 1:
            raise ValueError("interval_frames must be >= 1")


@dataclass(frozen=True)
class ManipulationScript:
    name: str
    key_frames: tuple[KeyFrame, ...]
    frame_rate_fps: float

    def __post_init__(self):
        if len(self.key_frames) < 2:
            raise ValueError("a script needs at least 2 key frames")
        if not (math.isfinite(self.frame_rate_fps) and self.frame_rate_fps > 0):
            raise ValueError("frame_rate_fps must be > 0")
        first, rest = self.key_frames[0], self.key_frames[1:]
        if first.interval_frames is not None:
            raise ValueError("the first key frame takes no interval")
        for i, kf in enumerate(rest, start=1):
            if kf.interval_frames is None:
                raise ValueError(f"key frame {i} is missing its interval")


@dataclass(frozen=True)
class Trajectory:
    """Compiled frame-by-frame pose sequence."""

    frames: tuple[HandPose, ...]
    key_frame_indices: tuple[int, ...]
    frame_rate_fps: float

    def __post_init__(self):
        if not self.frames:
            raise ValueError("a trajectory needs at least one frame")
        kfi = self.key_frame_indices
        if kfi[0] != 0 or kfi[-1] != len(self.frames) - 1 or list(kfi) != sorted(set(kfi)):
            raise ValueError("key_frame_indices must strictly increase from 0 to the last frame")


def interpolate_segment(theta_i: HandPose, theta_next: HandPose, T: int) -> list[HandPose]:
    """Frames t = 1..T of the linear segment from theta_i to theta_next."""
    if T < 1:
        raise ValueError("T must be >= 1")
    start = theta_i.to_array()
    delta = theta_next.to_array() - start
    frames = []
    for t in range(1, T):
        frames.append(HandPose.from_array(start + (t / T) * delta))
    frames.append(theta_next)
    return frames


def compile_script(
    script: ManipulationScript,
    gesture_set,
    spec: HandSpec,
    coupling: CouplingConfig,
) -> Trajectory:
    """Expand a script into its full trajectory.

    Frame 0 is the first key-frame pose itself; each following key frame
    contributes interval_frames interpolated frames ending exactly on it,
    so the frame count is 1 + sum of intervals.
    """
    from .gestures import find_gesture  # deferred: gestures also imports poses

    def resolve(kf: KeyFrame, index: int) -> HandPose:
        if isinstance(kf.target, HandPose):
            return kf.target
        try:
            return find_gesture(gesture_set, kf.target).pose
        except GestureNotFoundError as exc:
            raise CompileError(f"key frame {index}: {exc}") from exc

    poses = [resolve(kf, i) for i, kf in enumerate(script.key_frames)]
    frames: list[HandPose] = [poses[0]]
    indices = [0]
    for i in range(1, len(poses)):
        frames.extend(interpolate_segment(poses[i - 1], poses[i], script.key_frames[i].interval_frames))
        indices.append(len(frames) - 1)
    return Trajectory(
        frames=tuple(frames),
        key_frame_indices=tuple(indices),
        frame_rate_fps=script.frame_rate_fps,
    )


# ---------------------------------------------------------------------------
# Validation and metrics


@dataclass(frozen=True)
class FrameViolation:
    frame: int
    violation: RomViolation

    def __str__(self) -> str:
        return f"frame {self.frame}: {self.violation}"


@dataclass(frozen=True)
class StepFlag:
    """A segment whose per-frame step exceeds the limit, with the fix."""

    segment: int
    start_frame: int
    end_frame: int
    max_step_deg: float
    suggested_interval: int

    def __str__(self) -> str:
        return (
            f"segment {self.segment} (frames {self.start_frame}..{self.end_frame}): "
            f"max step {self.max_step_deg:g} deg/frame; use interval >= {self.suggested_interval}"
        )


@dataclass(frozen=True)
class TrajectoryReport:
    rom_violations: tuple[FrameViolation, ...]
    frame_residuals_deg: tuple[float, ...]
    max_residual_deg: float
    max_step_deg: float
    step_limit_deg: float
    step_flags: tuple[StepFlag, ...]

    def clean(self, residual_tol_deg: float = 2.0) -> bool:
        return (
            not self.rom_violations
            and not self.step_flags
            and self.max_residual_deg <= residual_tol_deg
        )

    def problems(self, residual_tol_deg: float = 2.0) -> list[str]:
        out = [str(v) for v in self.rom_violations]
        if self.max_residual_deg > residual_tol_deg:
            out.append(
                f"coupling residual {self.max_residual_deg:.3g} deg exceeds "
                f"{residual_tol_deg:g} deg"
            )
        out.extend(str(f) for f in self.step_flags)
        return out


def validate_trajectory(
    trajectory: Trajectory,
    spec: HandSpec,
    coupling: CouplingConfig,
    max_step_deg: float = 5.0,
) -> TrajectoryReport:
    """Per-frame ROM check, coupling residual, and inter-frame step analysis.

    A segment is flagged when any joint moves more than ``max_step_deg`` per
    frame; the suggested interval is the smallest that would comply.
    """
    violations = []
    residuals = []
    for i, pose in enumerate(trajectory.frames):
        for v in validate_pose(pose, spec, "ours"):
            violations.append(FrameViolation(frame=i, violation=v))
        residuals.append(project(pose, coupling, spec)[1])

    arr = np.array([pose.angles for pose in trajectory.frames])
    steps = np.abs(np.diff(arr, axis=0)) if len(arr) > 1 else np.zeros((0, arr.shape[1]))
    max_step = float(steps.max()) if steps.size else 0.0

    flags = []
    kfi = trajectory.key_frame_indices
    for seg in range(len(kfi) - 1):
        lo, hi = kfi[seg], kfi[seg + 1]
        seg_steps = steps[lo:hi]
        seg_max = float(seg_steps.max()) if seg_steps.size else 0.0
        if seg_max > max_step_deg:
            delta = float(np.max(np.abs(arr[hi] - arr[lo])))
            flags.append(
                StepFlag(
                    segment=seg,
                    start_frame=lo,
                    end_frame=hi,
                    max_step_deg=seg_max,
                    suggested_interval=math.ceil(delta / max_step_deg),
                )
            )

    return TrajectoryReport(
        rom_violations=tuple(violations),
        frame_residuals_deg=tuple(residuals),
        max_residual_deg=max(residuals),
        max_step_deg=max_step,
        step_limit_deg=max_step_deg,
        step_flags=tuple(flags),
    )


@dataclass(frozen=True)
class TrajectoryMetrics:
    duration_s: float
    gesture_count: int
    frame_count: int


def trajectory_metrics(trajectory: Trajectory) -> TrajectoryMetrics:
    return TrajectoryMetrics(
        duration_s=(len(trajectory.frames) - 1) / trajectory.frame_rate_fps,
        gesture_count=len(trajectory.key_frame_indices),
        frame_count=len(trajectory.frames),
    )


def joint_displacement_series(
    trajectory: Trajectory, joints: Optional[Sequence] = None
) -> dict:
    """Per-joint (frame, angle) series for plotting; piecewise-linear by construction."""
    selection = tuple(joints) if joints is not None else JOINT_ORDER
    for pair in selection:
        if pair not in set(JOINT_ORDER):
            raise ConfigurationError(f"unknown joint selection entry {pair!r}")
    series = {pair: [] for pair in selection}
    for i, pose in enumerate(trajectory.frames):
        for digit, role in selection:
            series[(digit, role)].append((i, pose.get(digit, role)))
    return series


# ---------------------------------------------------------------------------
# Documents and CSV export


def parse_script(doc: Mapping, path: str = "script") -> ManipulationScript:
    if not isinstance(doc, Mapping):
        raise SchemaError(f"{path}: expected a JSON object")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaError(f"{path}.name: expected a non-empty string")
    fps = doc.get("frame_rate_fps")
    if not isinstance(fps, (int, float)) or isinstance(fps, bool) or fps <= 0:
        raise SchemaError(f"{path}.frame_rate_fps: expected a positive number")
    raw_frames = doc.get("key_frames")
    if not isinstance(raw_frames, list) or len(raw_frames) < 2:
        raise SchemaError(f"{path}.key_frames: expected an array of at least 2 entries")
    key_frames = []
    for i, entry in enumerate(raw_frames):
        kf_path = f"{path}.key_frames[{i}]"
        if not isinstance(entry, Mapping):
            raise SchemaError(f"{kf_path}: expected an object")
        has_gesture = "gesture" in entry
        has_pose = "pose" in entry
        if has_gesture == has_pose:
            raise SchemaError(f"{kf_path}: exactly one of 'gesture' or 'pose' is required")
        if has_gesture:
            target: Union[str, HandPose] = entry["gesture"]
            if not isinstance(target, str) or not target:
                raise SchemaError(f"{kf_path}.gesture: expected a non-empty string id")
        else:
            target = HandPose.from_document(entry["pose"], path=f"{kf_path}.pose")
        interval = entry.get("interval_frames")
        if i == 0:
            if interval is not None:
                raise SchemaError(f"{kf_path}: the first key frame takes no interval_frames")
        else:
            if not isinstance(interval, int) or isinstance(interval, bool) or interval < 1:
                raise SchemaError(f"{kf_path}.interval_frames: expected an integer >= 1")
        key_frames.append(KeyFrame(target=target, interval_frames=interval))
    return ManipulationScript(name=name, key_frames=tuple(key_frames), frame_rate_fps=float(fps))


def load_script(source) -> ManipulationScript:
    if isinstance(source, Mapping):
        return parse_script(source)
    return parse_script(read_json(Path(source)))


def script_document(script: ManipulationScript) -> dict:
    key_frames = []
    for i, kf in enumerate(script.key_frames):
        entry: dict = {}
        if isinstance(kf.target, HandPose):
            entry["pose"] = kf.target.to_document()
        else:
            entry["gesture"] = kf.target
        if i > 0:
            entry["interval_frames"] = kf.interval_frames
        key_frames.append(entry)
    return {
        "name": script.name,
        "frame_rate_fps": script.frame_rate_fps,
        "key_frames": key_frames,
    }


def trajectory_csv_header() -> str:
    cols = [f"{digit.key}_{role.key}" for digit, role in JOINT_ORDER]
    return "frame," + ",".join(cols) + ",is_key_frame"


def export_trajectory_csv(trajectory: Trajectory) -> str:
    """Frame-by-frame angles as CSV: frame, 20 canonical columns, is_key_frame."""
    key_set = set(trajectory.key_frame_indices)
    lines = [trajectory_csv_header()]
    for i, pose in enumerate(trajectory.frames):
        fields = [str(i)]
        fields.extend(format_float(a) for a in pose.angles)
        fields.append("1" if i in key_set else "0")
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"
