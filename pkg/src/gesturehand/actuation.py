"""Underactuation coupling between 13 actuators and the 20-joint pose space.

Four digits (thumb, index, middle, little) get three actuators each: one
driving the distal pair J1+J2 through a fixed passive ratio, one for the base
flexion J3, one for abduction J4. The ring finger is driven by a single
normalized actuator that scales a fixed three-joint profile. Also home to the
tendon excursion model and its regression diagnostics.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ConfigurationError, FitError
from .hand_model import (
    DigitId,
    HandPose,
    HandSpec,
    JOINT_INDEX,
    JointRole,
    _r_squared,
)


class ActuatorId(enum.IntEnum):
    """The 13 actuators, in canonical CSV column order."""

    THUMB_FLEX = 0
    THUMB_BASE = 1
    THUMB_ABD_ADD = 2
    INDEX_FLEX = 3
    INDEX_BASE = 4
    INDEX_ABD_ADD = 5
    MIDDLE_FLEX = 6
    MIDDLE_BASE = 7
    MIDDLE_ABD_ADD = 8
    LITTLE_FLEX = 9
    LITTLE_BASE = 10
    LITTLE_ABD_ADD = 11
    RING_ALL = 12

    @property
    def key(self) -> str:
        return self.name.lower()


ACTUATOR_ORDER: tuple[ActuatorId, ...] = tuple(ActuatorId)

#: Digits driven by a (flex, base, abd) actuator triple.
COUPLED_DIGITS: tuple[DigitId, ...] = (
    DigitId.THUMB,
    DigitId.INDEX,
    DigitId.MIDDLE,
    DigitId.LITTLE,
)

DIGIT_ACTUATORS: dict[DigitId, tuple[ActuatorId, ActuatorId, ActuatorId]] = {
    DigitId.THUMB: (ActuatorId.THUMB_FLEX, ActuatorId.THUMB_BASE, ActuatorId.THUMB_ABD_ADD),
    DigitId.INDEX: (ActuatorId.INDEX_FLEX, ActuatorId.INDEX_BASE, ActuatorId.INDEX_ABD_ADD),
    DigitId.MIDDLE: (ActuatorId.MIDDLE_FLEX, ActuatorId.MIDDLE_BASE, ActuatorId.MIDDLE_ABD_ADD),
    DigitId.LITTLE: (ActuatorId.LITTLE_FLEX, ActuatorId.LITTLE_BASE, ActuatorId.LITTLE_ABD_ADD),
}


@dataclass(frozen=True)
class ActuatorVector:
    """13 actuator values: degrees for flex/base/abd, normalized u for ring."""

    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(ACTUATOR_ORDER):
            raise ValueError(
                f"need {len(ACTUATOR_ORDER)} actuator values, got {len(self.values)}"
            )
        values = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in values):
            raise ValueError("actuator values must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls) -> "ActuatorVector":
        return cls(values=(0.0,) * len(ACTUATOR_ORDER))

    @classmethod
    def from_mapping(cls, mapping: Mapping[ActuatorId, float]) -> "ActuatorVector":
        values = [0.0] * len(ACTUATOR_ORDER)
        for aid, value in mapping.items():
            values[int(aid)] = float(value)
        return cls(values=tuple(values))

    def get(self, aid: ActuatorId) -> float:
        return self.values[int(aid)]

    def to_document(self) -> dict:
        return {aid.key: self.values[int(aid)] for aid in ACTUATOR_ORDER}


@dataclass(frozen=True)
class CouplingConfig:
    """Fixed coupling law parameters.

    ``kappa`` maps each triple-actuator digit to its passive J2-per-J1 ratio;
    ``ring_profile`` is the (J1, J2, J3) angle triple the ring reaches at u=1.
    """

    kappa: Mapping[DigitId, float]
    ring_profile: tuple[float, float, float]

    def __post_init__(self):
        kappa = dict(self.kappa)
        for digit in COUPLED_DIGITS:
            if digit not in kappa:
                raise ConfigurationError(f"kappa missing for {digit.display}")
            if not (math.isfinite(kappa[digit]) and kappa[digit] > 0):
                raise ConfigurationError(f"kappa for {digit.display} must be > 0")
        object.__setattr__(self, "kappa", kappa)
        profile = tuple(float(v) for v in self.ring_profile)
        if len(profile) != 3 or not all(math.isfinite(v) and v >= 0 for v in profile):
            raise ConfigurationError("ring_profile must be three finite non-negative angles")
        object.__setattr__(self, "ring_profile", profile)

    @classmethod
    def default_from_spec(cls, spec: HandSpec) -> "CouplingConfig":
        """Derive defaults from the "ours" envelopes: kappa such that J1 and J2
        hit their maxima together, ring profile = the ring joints' maxima."""
        kappa = {}
        for digit in COUPLED_DIGITS:
            j1 = spec.joint(digit, JointRole.J1_DISTAL).rom_ours
            j2 = spec.joint(digit, JointRole.J2_MIDDLE).rom_ours
            if j1 is None or j2 is None or j1.hi <= 0:
                raise ConfigurationError(
                    f"cannot derive kappa for {digit.display}: missing 'ours' envelope"
                )
            kappa[digit] = j2.hi / j1.hi
        profile = []
        for role in (JointRole.J1_DISTAL, JointRole.J2_MIDDLE, JointRole.J3_BASE):
            rom = spec.joint(DigitId.RING, role).rom_ours
            if rom is None:
                raise ConfigurationError("ring finger lacks an 'ours' flexion envelope")
            profile.append(rom.hi)
        return cls(kappa=kappa, ring_profile=tuple(profile))


def expand(actuators: ActuatorVector, coupling: CouplingConfig, spec: HandSpec) -> HandPose:
    """Map 13 actuator values to the full 20-angle pose.

    Triple-actuator digits: J1 = flex, J2 = kappa * flex, J3 = base,
    J4 = abd. Ring: (J1, J2, J3) = u * ring_profile with J4 pinned at 0.
    The output may violate ROM; clamping is left to the caller.
    """
    angles = [0.0] * len(JOINT_INDEX)
    for digit in COUPLED_DIGITS:
        flex_id, base_id, abd_id = DIGIT_ACTUATORS[digit]
        flex = actuators.get(flex_id)
        angles[JOINT_INDEX[(digit, JointRole.J1_DISTAL)]] = flex
        angles[JOINT_INDEX[(digit, JointRole.J2_MIDDLE)]] = coupling.kappa[digit] * flex
        angles[JOINT_INDEX[(digit, JointRole.J3_BASE)]] = actuators.get(base_id)
        angles[JOINT_INDEX[(digit, JointRole.J4_ABD_ADD)]] = actuators.get(abd_id)
    u = actuators.get(ActuatorId.RING_ALL)
    for role, profile in zip(
        (JointRole.J1_DISTAL, JointRole.J2_MIDDLE, JointRole.J3_BASE),
        coupling.ring_profile,
    ):
        angles[JOINT_INDEX[(DigitId.RING, role)]] = u * profile
    return HandPose(angles=tuple(angles))


def project(
    pose: HandPose, coupling: CouplingConfig, spec: HandSpec
) -> tuple[ActuatorVector, float]:
    """Closed-form least-squares inverse of :func:`expand`, plus the residual.

    Each actuator minimizes the squared angle error over the joints it
    drives; the ring input is clamped to [0, 1]. The residual is the max
    absolute per-joint gap (degrees) between ``expand(project(pose))`` and
    ``pose``; it is ~0 exactly when the pose lies on the coupling manifold.
    """
    values = [0.0] * len(ACTUATOR_ORDER)
    for digit in COUPLED_DIGITS:
        flex_id, base_id, abd_id = DIGIT_ACTUATORS[digit]
        k = coupling.kappa[digit]
        j1 = pose.get(digit, JointRole.J1_DISTAL)
        j2 = pose.get(digit, JointRole.J2_MIDDLE)
        values[int(flex_id)] = (j1 + k * j2) / (1.0 + k * k)
        values[int(base_id)] = pose.get(digit, JointRole.J3_BASE)
        values[int(abd_id)] = pose.get(digit, JointRole.J4_ABD_ADD)
    profile = np.array(coupling.ring_profile)
    ring = np.array(
        [
            pose.get(DigitId.RING, JointRole.J1_DISTAL),
            pose.get(DigitId.RING, JointRole.J2_MIDDLE),
            pose.get(DigitId.RING, JointRole.J3_BASE),
        ]
    )
    u = float(profile @ ring / (profile @ profile))
    values[int(ActuatorId.RING_ALL)] = min(1.0, max(0.0, u))

    actuators = ActuatorVector(values=tuple(values))
    reachable = expand(actuators, coupling, spec)
    residual = float(np.max(np.abs(reachable.to_array() - pose.to_array())))
    return actuators, residual


# ---------------------------------------------------------------------------
# Tendon excursion model


@dataclass(frozen=True)
class TendonModel:
    """Moment arms (mm) per modeled joint; excursion E = sum r * phi."""

    moment_arm_mm: Mapping[tuple[DigitId, JointRole], float]
    offset_mm: float = 0.0

    def __post_init__(self):
        arms = dict(self.moment_arm_mm)
        for joint, arm in arms.items():
            if not (math.isfinite(arm) and arm > 0):
                digit, role = joint
                raise ConfigurationError(
                    f"moment arm for {digit.display}.{role.display} must be > 0"
                )
        object.__setattr__(self, "moment_arm_mm", arms)


def excursion(
    angles: Iterable[tuple[tuple[DigitId, JointRole], float]], model: TendonModel
) -> float:
    """Total tendon excursion in mm for (joint, degrees) pairs.

    Angles convert to radians internally, so a single joint reduces to the
    moment-arm law E = r * phi exactly.
    """
    total = 0.0
    for joint, angle_deg in angles:
        arm = model.moment_arm_mm.get(joint)
        if arm is None:
            digit, role = joint
            raise ConfigurationError(
                f"no moment arm for {digit.display}.{role.display}"
            )
        total += arm * math.radians(angle_deg)
    return total


@dataclass(frozen=True)
class LinearFit:
    a: float  # slope
    b: float  # intercept
    r_squared: float


def fit_linear(excursions_mm: Sequence[float], angles_deg: Sequence[float]) -> LinearFit:
    """Ordinary least squares of joint angle on tendon excursion."""
    e = np.asarray(excursions_mm, dtype=float)
    phi = np.asarray(angles_deg, dtype=float)
    if e.shape != phi.shape or e.ndim != 1:
        raise ValueError("excursions and angles must be 1-D sequences of equal length")
    if e.size < 2:
        raise FitError("need at least 2 points")
    e_mean = e.mean()
    var = float(np.sum((e - e_mean) ** 2))
    if var == 0.0:
        raise FitError("all excursions are equal; regression is degenerate")
    slope = float(np.sum((e - e_mean) * (phi - phi.mean())) / var)
    intercept = float(phi.mean() - slope * e_mean)
    residuals = phi - (slope * e + intercept)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((phi - phi.mean()) ** 2))
    return LinearFit(a=slope, b=intercept, r_squared=_r_squared(ss_res, ss_tot))


# ---------------------------------------------------------------------------
# Actuator command export


def actuator_csv_header() -> str:
    return "frame," + ",".join(a.key for a in ACTUATOR_ORDER) + ",residual_deg"


def format_float(value: float) -> str:
    """6-significant-digit formatting with a clean zero."""
    if value == 0.0:
        return "0"
    return f"{value:.6g}"


def export_actuator_csv(trajectory, coupling: CouplingConfig, spec: HandSpec) -> str:
    """Per-frame 13-actuator commands for a compiled trajectory, as CSV text.

    One row per frame: frame index, the projected actuator values in
    canonical order, then the projection residual in degrees.
    """
    lines = [actuator_csv_header()]
    for i, pose in enumerate(trajectory.frames):
        actuators, residual = project(pose, coupling, spec)
        fields = [str(i)]
        fields.extend(format_float(v) for v in actuators.values)
        fields.append(format_float(residual))
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"
