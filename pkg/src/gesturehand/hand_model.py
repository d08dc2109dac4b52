"""Kinematic model of the 13-DOA anthropomorphic hand.

Twenty joints (five digits, four rotation angles each), three range-of-motion
envelopes per joint (human / grasping / ours), phalanx lengths, forward
kinematics, and ROM coverage analytics. All interface angles are degrees;
radians appear only inside trigonometric evaluation.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Literal, Mapping, Optional, Sequence

import numpy as np

from .errors import ConfigurationError, FitError, SchemaError
from .jsonio import canonical_json, document_fingerprint, read_json


class DigitId(enum.IntEnum):
    """The five digits, ordered for canonical serialization."""

    THUMB = 0
    INDEX = 1
    MIDDLE = 2
    RING = 3
    LITTLE = 4

    @property
    def key(self) -> str:
        return self.name.lower()

    @property
    def display(self) -> str:
        return self.name.capitalize()


_ROLE_DISPLAY = {
    "J1_DISTAL": "J1_Distal",
    "J2_MIDDLE": "J2_Middle",
    "J3_BASE": "J3_Base",
    "J4_ABD_ADD": "J4_AbdAdd",
}


class JointRole(enum.IntEnum):
    """Per-digit joint slots.

    J1 is the distal flexion joint (DIP; thumb IP), J2 the middle one (PIP;
    thumb MCP), J3 the base flexion (MCP; thumb CMC), and J4 the
    abduction/adduction angle at the base joint.
    """

    J1_DISTAL = 0
    J2_MIDDLE = 1
    J3_BASE = 2
    J4_ABD_ADD = 3

    @property
    def key(self) -> str:
        return self.name.lower()

    @property
    def display(self) -> str:
        return _ROLE_DISPLAY[self.name]


DIGITS: tuple[DigitId, ...] = tuple(DigitId)
ROLES: tuple[JointRole, ...] = tuple(JointRole)

#: Canonical (digit, role) ordering used for poses, CSV columns and documents.
JOINT_ORDER: tuple[tuple[DigitId, JointRole], ...] = tuple(
    (d, r) for d in DIGITS for r in ROLES
)
JOINT_INDEX: dict[tuple[DigitId, JointRole], int] = {
    pair: i for i, pair in enumerate(JOINT_ORDER)
}

Envelope = Literal["human", "grasping", "ours"]
ENVELOPES: tuple[str, ...] = ("human", "grasping", "ours")


def _digit_from_key(key: str, path: str) -> DigitId:
    try:
        return DigitId[str(key).upper()]
    except KeyError:
        raise SchemaError(f"{path}: unknown digit {key!r}") from None


def _role_from_key(key: str, path: str) -> JointRole:
    try:
        return JointRole[str(key).upper()]
    except KeyError:
        raise SchemaError(f"{path}: unknown joint role {key!r}") from None


@dataclass(frozen=True)
class AngleInterval:
    """Closed angle interval [lo, hi] in degrees."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise SchemaError(f"interval bounds must be finite, got [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise SchemaError(f"invalid interval [{self.lo:g}, {self.hi:g}]: lo > hi")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, angle: float) -> bool:
        return self.lo <= angle <= self.hi

    def overlap_length(self, other: "AngleInterval") -> float:
        return max(0.0, min(self.hi, other.hi) - max(self.lo, other.lo))


@dataclass(frozen=True)
class JointSpec:
    """One joint row: three ROM envelopes plus the driven phalanx length.

    ``rom_ours`` is None for joints the mechanism does not actuate (the ring
    abduction slot); ``phalanx_length_mm`` is None for all J4 rows.
    """

    digit: DigitId
    role: JointRole
    rom_human: AngleInterval
    rom_grasping: AngleInterval
    rom_ours: Optional[AngleInterval]
    phalanx_length_mm: Optional[float]

    @property
    def label(self) -> str:
        return f"{self.digit.display}.{self.role.display}"

    def envelope(self, name: Envelope) -> Optional[AngleInterval]:
        if name == "human":
            return self.rom_human
        if name == "grasping":
            return self.rom_grasping
        if name == "ours":
            return self.rom_ours
        raise ValueError(f"unknown envelope {name!r}; expected one of {ENVELOPES}")


@dataclass(frozen=True)
class HandSpec:
    """Immutable description of the whole hand: 20 joints plus fingertip forces."""

    joints: tuple[JointSpec, ...]
    fingertip_force_n: Mapping[DigitId, float]

    def __post_init__(self):
        seen: dict[tuple[DigitId, JointRole], JointSpec] = {}
        for js in self.joints:
            pair = (js.digit, js.role)
            if pair in seen:
                raise SchemaError(f"duplicate joint {js.label}")
            seen[pair] = js
        for digit, role in JOINT_ORDER:
            if (digit, role) not in seen:
                raise SchemaError(
                    f"missing joint {digit.display}.{_ROLE_DISPLAY[role.name]}"
                )
        # Normalize to canonical order so serialization is deterministic.
        object.__setattr__(
            self, "joints", tuple(seen[pair] for pair in JOINT_ORDER)
        )
        object.__setattr__(self, "_by_pair", seen)
        forces = dict(self.fingertip_force_n)
        for digit in DIGITS:
            if digit not in forces:
                raise SchemaError(f"missing fingertip force for {digit.display}")
            if not math.isfinite(forces[digit]):
                raise SchemaError(f"fingertip force for {digit.display} must be finite")
        object.__setattr__(self, "fingertip_force_n", forces)

    def joint(self, digit: DigitId, role: JointRole) -> JointSpec:
        return self._by_pair[(digit, role)]  # type: ignore[attr-defined]

    def phalanx_lengths(self, digit: DigitId) -> tuple[float, float, float]:
        """(L3 proximal, L2 middle, L1 distal) in mm; raises if any is missing."""
        out = []
        for role in (JointRole.J3_BASE, JointRole.J2_MIDDLE, JointRole.J1_DISTAL):
            length = self.joint(digit, role).phalanx_length_mm
            if length is None:
                raise ConfigurationError(
                    f"no phalanx length for {digit.display}.{role.display}"
                )
            out.append(length)
        return tuple(out)  # type: ignore[return-value]


@dataclass(frozen=True)
class HandPose:
    """All 20 joint angles in degrees, stored in canonical joint order."""

    angles: tuple[float, ...]

    def __post_init__(self):
        if len(self.angles) != len(JOINT_ORDER):
            raise ValueError(f"a pose needs {len(JOINT_ORDER)} angles, got {len(self.angles)}")
        angles = tuple(float(a) for a in self.angles)
        if not all(math.isfinite(a) for a in angles):
            raise ValueError("pose angles must be finite")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def zero(cls) -> "HandPose":
        return cls(angles=(0.0,) * len(JOINT_ORDER))

    @classmethod
    def from_mapping(cls, mapping: Mapping[tuple[DigitId, JointRole], float]) -> "HandPose":
        """Build from a sparse {(digit, role): degrees} mapping; the rest is 0."""
        angles = [0.0] * len(JOINT_ORDER)
        for pair, value in mapping.items():
            angles[JOINT_INDEX[pair]] = float(value)
        return cls(angles=tuple(angles))

    @classmethod
    def from_array(cls, arr: Sequence[float]) -> "HandPose":
        return cls(angles=tuple(float(a) for a in arr))

    def to_array(self) -> np.ndarray:
        return np.array(self.angles, dtype=float)

    def get(self, digit: DigitId, role: JointRole) -> float:
        return self.angles[JOINT_INDEX[(digit, role)]]

    def replace(self, digit: DigitId, role: JointRole, angle: float) -> "HandPose":
        angles = list(self.angles)
        angles[JOINT_INDEX[(digit, role)]] = float(angle)
        return HandPose(angles=tuple(angles))

    @classmethod
    def from_document(cls, doc: Mapping, path: str = "pose") -> "HandPose":
        if not isinstance(doc, Mapping):
            raise SchemaError(f"{path}: expected an object keyed by digit")
        angles = [None] * len(JOINT_ORDER)
        for digit_key, roles in doc.items():
            digit = _digit_from_key(digit_key, path)
            if not isinstance(roles, Mapping):
                raise SchemaError(f"{path}.{digit_key}: expected an object keyed by role")
            for role_key, value in roles.items():
                role = _role_from_key(role_key, f"{path}.{digit_key}")
                if not isinstance(value, (int, float)) or isinstance(value, bool):
                    raise SchemaError(f"{path}.{digit_key}.{role_key}: expected a number")
                angles[JOINT_INDEX[(digit, role)]] = float(value)
        for i, a in enumerate(angles):
            if a is None:
                digit, role = JOINT_ORDER[i]
                raise SchemaError(f"{path}: missing angle for {digit.display}.{role.display}")
        return cls(angles=tuple(angles))

    def to_document(self) -> dict:
        doc: dict = {}
        for digit in DIGITS:
            doc[digit.key] = {role.key: self.get(digit, role) for role in ROLES}
        return doc


@dataclass(frozen=True)
class RomViolation:
    """One joint outside the chosen envelope, with the signed excess in degrees."""

    digit: DigitId
    role: JointRole
    angle_deg: float
    excess_deg: float
    note: str

    def __str__(self) -> str:
        return (
            f"{self.digit.display}.{self.role.display} = {self.angle_deg:g} deg "
            f"({self.note}, excess {self.excess_deg:+g} deg)"
        )


# ---------------------------------------------------------------------------
# Document loading / saving


def parse_hand_spec(doc: Mapping) -> HandSpec:
    """Validate a hand-spec document and construct the HandSpec."""
    if not isinstance(doc, Mapping):
        raise SchemaError("hand spec: expected a JSON object")
    rows = doc.get("joints")
    if not isinstance(rows, list):
        raise SchemaError("hand spec: missing or invalid 'joints' array")

    def interval(row: Mapping, field: str, path: str, nullable: bool) -> Optional[AngleInterval]:
        raw = row.get(field, "missing")
        if raw is None and nullable:
            return None
        if raw == "missing":
            raise SchemaError(f"{path}: missing field {field!r}")
        if (
            not isinstance(raw, (list, tuple))
            or len(raw) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw)
        ):
            raise SchemaError(f"{path}.{field}: expected a 2-element [lo, hi] array")
        try:
            return AngleInterval(lo=float(raw[0]), hi=float(raw[1]))
        except SchemaError as exc:
            raise SchemaError(f"{path}.{field}: {exc}") from None

    joints = []
    for i, row in enumerate(rows):
        path = f"joints[{i}]"
        if not isinstance(row, Mapping):
            raise SchemaError(f"{path}: expected an object")
        digit = _digit_from_key(row.get("digit"), path)
        role = _role_from_key(row.get("role"), path)
        length = row.get("length_mm", "missing")
        if length == "missing":
            raise SchemaError(f"{path}: missing field 'length_mm'")
        if length is not None:
            if not isinstance(length, (int, float)) or isinstance(length, bool):
                raise SchemaError(f"{path}.length_mm: expected a number or null")
            length = float(length)
        joints.append(
            JointSpec(
                digit=digit,
                role=role,
                rom_human=interval(row, "rom_human", path, nullable=False),
                rom_grasping=interval(row, "rom_grasping", path, nullable=False),
                rom_ours=interval(row, "rom_ours", path, nullable=True),
                phalanx_length_mm=length,
            )
        )

    forces_doc = doc.get("fingertip_force_n")
    if not isinstance(forces_doc, Mapping):
        raise SchemaError("hand spec: missing or invalid 'fingertip_force_n' object")
    forces = {}
    for key, value in forces_doc.items():
        digit = _digit_from_key(key, "fingertip_force_n")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise SchemaError(f"fingertip_force_n.{key}: expected a number")
        forces[digit] = float(value)

    return HandSpec(joints=tuple(joints), fingertip_force_n=forces)


def load_hand_spec(source) -> HandSpec:
    """Load a HandSpec from a parsed document or a JSON file path."""
    if isinstance(source, Mapping):
        return parse_hand_spec(source)
    return parse_hand_spec(read_json(Path(source)))


def hand_spec_document(spec: HandSpec) -> dict:
    """Serialize to the canonical document form (inverse of parse_hand_spec)."""
    rows = []
    for js in spec.joints:
        rows.append(
            {
                "digit": js.digit.key,
                "role": js.role.key,
                "rom_human": [js.rom_human.lo, js.rom_human.hi],
                "rom_grasping": [js.rom_grasping.lo, js.rom_grasping.hi],
                "rom_ours": None if js.rom_ours is None else [js.rom_ours.lo, js.rom_ours.hi],
                "length_mm": js.phalanx_length_mm,
            }
        )
    return {
        "joints": rows,
        "fingertip_force_n": {d.key: spec.fingertip_force_n[d] for d in DIGITS},
    }


def hand_spec_json(spec: HandSpec) -> str:
    return canonical_json(hand_spec_document(spec))


def spec_fingerprint(spec: HandSpec) -> str:
    """Content id used by gesture sets to record which spec they were checked against."""
    return document_fingerprint(hand_spec_document(spec))


# ---------------------------------------------------------------------------
# Pose validation and ROM analytics


def validate_pose(pose: HandPose, spec: HandSpec, envelope: Envelope) -> list[RomViolation]:
    """List all joints of ``pose`` outside the chosen envelope.

    Joints with an absent envelope (unactuated slots) pass only at exactly
    0 degrees; any other value is flagged as an unactuated-joint violation.
    """
    violations = []
    for js in spec.joints:
        angle = pose.get(js.digit, js.role)
        interval = js.envelope(envelope)
        if interval is None:
            if angle != 0.0:
                violations.append(
                    RomViolation(js.digit, js.role, angle, angle, "unactuated joint")
                )
        elif angle < interval.lo:
            violations.append(
                RomViolation(js.digit, js.role, angle, angle - interval.lo,
                             f"below min {interval.lo:g}")
            )
        elif angle > interval.hi:
            violations.append(
                RomViolation(js.digit, js.role, angle, angle - interval.hi,
                             f"above max {interval.hi:g}")
            )
    return violations


Aggregation = Literal["per-joint-mean", "length-weighted"]
AbsentPolicy = Literal["exclude-absent", "include-absent-as-zero"]


@dataclass(frozen=True)
class CoverageRow:
    digit: DigitId
    role: JointRole
    ratio: Optional[float]  # None when the joint was skipped
    overlap_deg: float
    reference_deg: float


def coverage_table(
    spec: HandSpec, target: Envelope, reference: Envelope
) -> list[CoverageRow]:
    """Per-joint overlap ratios |target ∩ reference| / |reference|.

    Joints whose reference interval is absent or zero-length get ratio None
    (skipped with a warning); joints whose target is absent get ratio 0 with
    the full reference length recorded, so callers can apply either absent
    policy.
    """
    rows = []
    for js in spec.joints:
        ref = js.envelope(reference)
        tgt = js.envelope(target)
        if ref is None or ref.length == 0.0:
            warnings.warn(
                f"skipping {js.label}: reference envelope {reference!r} is "
                f"{'absent' if ref is None else 'zero-length'}",
                stacklevel=2,
            )
            rows.append(CoverageRow(js.digit, js.role, None, 0.0, 0.0))
            continue
        if tgt is None:
            rows.append(CoverageRow(js.digit, js.role, 0.0, 0.0, ref.length))
            continue
        overlap = tgt.overlap_length(ref)
        rows.append(CoverageRow(js.digit, js.role, overlap / ref.length, overlap, ref.length))
    return rows


def rom_coverage(
    spec: HandSpec,
    target: Envelope,
    reference: Envelope,
    aggregation: Aggregation = "per-joint-mean",
    absent: AbsentPolicy = "exclude-absent",
) -> float:
    """Fraction of the reference ROM envelope covered by the target envelope.

    ``per-joint-mean`` averages the per-joint ratios; ``length-weighted``
    divides total overlap degrees by total reference degrees. Joints whose
    target envelope is absent count as zero under ``include-absent-as-zero``
    and are dropped under ``exclude-absent``.
    """
    if aggregation not in ("per-joint-mean", "length-weighted"):
        raise ValueError(f"unknown aggregation {aggregation!r}")
    if absent not in ("exclude-absent", "include-absent-as-zero"):
        raise ValueError(f"unknown absent policy {absent!r}")

    rows = [r for r in coverage_table(spec, target, reference) if r.ratio is not None]
    if absent == "exclude-absent":
        rows = [
            r
            for r in rows
            if spec.joint(r.digit, r.role).envelope(target) is not None
        ]
    if not rows:
        raise ConfigurationError("no joints left to aggregate coverage over")
    if aggregation == "per-joint-mean":
        return float(np.mean([r.ratio for r in rows]))
    total_ref = sum(r.reference_deg for r in rows)
    return float(sum(r.overlap_deg for r in rows) / total_ref)


# ---------------------------------------------------------------------------
# Forward kinematics

FK_POINT_LABELS = ("base", "j3", "j2", "j1", "fingertip")


def forward_kinematics(pose: HandPose, spec: HandSpec, digit: DigitId) -> np.ndarray:
    """Joint positions of one digit as a (5, 3) array in mm.

    Frame convention: the digit base sits at the origin with the straight
    digit along +x and the palm normal along +z. The J4 angle rotates the
    whole digit about +z (abduction, x toward y); J3, J2 and J1 are
    successive flexions about the rotated y axis, curling the digit toward
    -z. Rows are base, J3, J2, J1 and fingertip; base and J3 coincide since
    the base flexion joint is at the digit's attachment point.
    """
    l3, l2, l1 = spec.phalanx_lengths(digit)
    psi = math.radians(pose.get(digit, JointRole.J4_ABD_ADD))
    cos_psi, sin_psi = math.cos(psi), math.sin(psi)

    points = np.zeros((5, 3))
    cumulative = 0.0
    position = np.zeros(3)
    flexions = (
        (pose.get(digit, JointRole.J3_BASE), l3),
        (pose.get(digit, JointRole.J2_MIDDLE), l2),
        (pose.get(digit, JointRole.J1_DISTAL), l1),
    )
    for i, (angle_deg, length) in enumerate(flexions):
        cumulative += math.radians(angle_deg)
        direction = np.array(
            [
                math.cos(cumulative) * cos_psi,
                math.cos(cumulative) * sin_psi,
                -math.sin(cumulative),
            ]
        )
        position = position + length * direction
        points[i + 2] = position
    return points


def fingertip_trajectory(
    spec: HandSpec, digit: DigitId, coupling, samples: int
) -> np.ndarray:
    """Fingertip positions over a uniform flexion sweep, as a (samples, 3) array.

    The digit's flexion actuators ramp together from zero to the top of the
    "ours" envelope under the coupling law, with abduction held at zero.
    """
    from . import actuation  # deferred: actuation builds on this module

    if samples < 2:
        raise ValueError("need at least 2 samples")
    tips = np.zeros((samples, 3))
    for i, t in enumerate(np.linspace(0.0, 1.0, samples)):
        values = {aid: 0.0 for aid in actuation.ActuatorId}
        if digit == DigitId.RING:
            values[actuation.ActuatorId.RING_ALL] = t
        else:
            flex_id, base_id, _ = actuation.DIGIT_ACTUATORS[digit]
            j1 = spec.joint(digit, JointRole.J1_DISTAL).rom_ours
            j3 = spec.joint(digit, JointRole.J3_BASE).rom_ours
            if j1 is None or j3 is None:
                raise ConfigurationError(f"{digit.display} has no 'ours' flexion envelope")
            values[flex_id] = t * j1.hi
            values[base_id] = t * j3.hi
        pose = actuation.expand(actuation.ActuatorVector.from_mapping(values), coupling, spec)
        tips[i] = forward_kinematics(pose, spec, digit)[-1]
    return tips


def flexion_plane_coords(points: np.ndarray) -> np.ndarray:
    """Project zero-abduction FK points into the flexion plane as (x, downward)."""
    pts = np.asarray(points, dtype=float)
    return np.column_stack([pts[:, 0], -pts[:, 2]])


@dataclass(frozen=True)
class SpiralFit:
    """Least-squares log-spiral r = a * exp(b * theta) through planar points."""

    a: float
    b: float
    r_squared: float


def log_spiral_fit(points: np.ndarray) -> SpiralFit:
    """Fit ln(r) = ln(a) + b*theta in polar coordinates about the origin.

    Points must be planar (N, 2) with none at the origin; polar angles are
    unwrapped so sweeps crossing the branch cut fit cleanly.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise ValueError("expected an (N, 2) array of planar points")
    if pts.shape[0] < 3:
        raise FitError("need at least 3 points for a spiral fit")
    radii = np.hypot(pts[:, 0], pts[:, 1])
    if np.any(radii == 0.0):
        raise FitError("a point sits at the fitting origin")
    theta = np.unwrap(np.arctan2(pts[:, 1], pts[:, 0]))
    if np.ptp(theta) < 1e-12:
        raise FitError("all points at the same polar angle; spiral fit is degenerate")
    log_r = np.log(radii)
    b, log_a = _ols_line(theta, log_r)
    residuals = log_r - (log_a + b * theta)
    ss_res = float(np.sum(residuals**2))
    ss_tot = float(np.sum((log_r - log_r.mean()) ** 2))
    return SpiralFit(a=math.exp(log_a), b=b, r_squared=_r_squared(ss_res, ss_tot))


def _ols_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Ordinary least squares slope and intercept of y on x."""
    x_mean, y_mean = x.mean(), y.mean()
    var = float(np.sum((x - x_mean) ** 2))
    if var == 0.0:
        raise FitError("regressor has zero variance")
    slope = float(np.sum((x - x_mean) * (y - y_mean)) / var)
    return slope, float(y_mean - slope * x_mean)


def _r_squared(ss_res: float, ss_tot: float, eps: float = 1e-10) -> float:
    # An (up to rounding noise) constant response counts as a perfect fit;
    # otherwise 1 - ss_res/ss_tot would be dominated by that noise.
    if ss_tot <= eps:
        return 1.0
    return 1.0 - ss_res / ss_tot
