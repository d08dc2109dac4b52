"""The base-gesture library: grasp taxonomy poses, thumb-opposition test poses,
and object translation/rotation poses, with loading, lookup, and executability
checks.

The shipped dataset holds 33 grasp-taxonomy gestures, 11 thumb-opposition
positions (scores 0..10 in document order), and 18 translation/rotation poses
(3 object shapes x 6 motions), 62 records in total.
"""
from __future__ import annotations

import difflib
import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from .actuation import CouplingConfig, project
from .errors import (
    ConfigurationError,
    GestureNotFoundError,
    GestureValidationError,
    SchemaError,
)
from .hand_model import HandPose, HandSpec, RomViolation, validate_pose
from .jsonio import read_json


class GestureCategory(enum.Enum):
    FEIX_GRASP = "FeixGrasp"
    KAPANDJI = "Kapandji"
    TRANSLATION_ROTATION = "TranslationRotation"


GESTURE_SOURCES = ("measured", "authored")


@dataclass(frozen=True)
class GestureRecord:
    id: str
    name: str
    category: GestureCategory
    pose: HandPose
    source: str
    notes: str = ""

    def __post_init__(self):
        if not self.id:
            raise SchemaError("gesture id must be non-empty")
        if not self.name:
            raise SchemaError(f"gesture {self.id!r}: name must be non-empty")
        if self.source not in GESTURE_SOURCES:
            raise SchemaError(
                f"gesture {self.id!r}: source must be one of {GESTURE_SOURCES}"
            )


@dataclass(frozen=True)
class GestureSet:
    records: tuple[GestureRecord, ...]
    hand_spec_ref: str
    load_warnings: tuple[str, ...] = ()

    def __post_init__(self):
        by_id = {}
        for rec in self.records:
            if rec.id in by_id:
                raise SchemaError(f"duplicate gesture id {rec.id!r}")
            by_id[rec.id] = rec
        object.__setattr__(self, "_by_id", by_id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def ids(self) -> tuple[str, ...]:
        return tuple(rec.id for rec in self.records)

    def get(self, gesture_id: str) -> Optional[GestureRecord]:
        return self._by_id.get(gesture_id)  # type: ignore[attr-defined]

    def by_category(self, category: GestureCategory) -> tuple[GestureRecord, ...]:
        return tuple(rec for rec in self.records if rec.category == category)


@dataclass(frozen=True)
class ExecutabilityReport:
    """Kinematic-feasibility verdict: ROM check plus coupling reachability."""

    violations: tuple[RomViolation, ...]
    residual_deg: float
    residual_tol_deg: float

    @property
    def ok(self) -> bool:
        return not self.violations and self.residual_deg <= self.residual_tol_deg

    def problems(self) -> list[str]:
        out = [str(v) for v in self.violations]
        if self.residual_deg > self.residual_tol_deg:
            out.append(
                f"coupling residual {self.residual_deg:.3g} deg exceeds "
                f"{self.residual_tol_deg:g} deg"
            )
        return out


def pose_executability(
    pose: HandPose,
    spec: HandSpec,
    coupling: CouplingConfig,
    residual_tol_deg: float = 2.0,
) -> ExecutabilityReport:
    """A pose is executable when it sits inside the "ours" envelope and within
    ``residual_tol_deg`` of the 13-actuator coupling manifold."""
    violations = tuple(validate_pose(pose, spec, "ours"))
    _, residual = project(pose, coupling, spec)
    return ExecutabilityReport(
        violations=violations, residual_deg=residual, residual_tol_deg=residual_tol_deg
    )


# ---------------------------------------------------------------------------
# Loading / saving


def parse_gesture_set(doc: Mapping, spec: HandSpec, strict: bool = True) -> GestureSet:
    if not isinstance(doc, Mapping):
        raise SchemaError("gesture set: expected a JSON object")
    ref = doc.get("hand_spec_ref")
    if not isinstance(ref, str) or not ref:
        raise SchemaError("gesture set: missing 'hand_spec_ref' string")
    raw = doc.get("gestures")
    if not isinstance(raw, list):
        raise SchemaError("gesture set: missing or invalid 'gestures' array")

    records = []
    problems = []
    for i, entry in enumerate(raw):
        path = f"gestures[{i}]"
        if not isinstance(entry, Mapping):
            raise SchemaError(f"{path}: expected an object")
        try:
            category = GestureCategory(entry.get("category"))
        except ValueError:
            raise SchemaError(
                f"{path}.category: expected one of "
                f"{[c.value for c in GestureCategory]}"
            ) from None
        rec = GestureRecord(
            id=str(entry.get("id") or ""),
            name=str(entry.get("name") or ""),
            category=category,
            pose=HandPose.from_document(entry.get("pose"), path=f"{path}.pose"),
            source=str(entry.get("source") or ""),
            notes=str(entry.get("notes") or ""),
        )
        for violation in validate_pose(rec.pose, spec, "ours"):
            problems.append(f"{rec.id}: {violation}")
        records.append(rec)

    if problems and strict:
        raise GestureValidationError(tuple(problems))
    return GestureSet(
        records=tuple(records),
        hand_spec_ref=ref,
        load_warnings=tuple(problems),
    )


def load_gesture_set(source, spec: HandSpec, strict: bool = True) -> GestureSet:
    """Load a gesture set from a parsed document or JSON file and validate every
    pose against the "ours" envelope.

    In strict mode any violation aborts the load; in lenient mode violations
    are collected on ``load_warnings`` instead.
    """
    if isinstance(source, Mapping):
        return parse_gesture_set(source, spec, strict=strict)
    return parse_gesture_set(read_json(Path(source)), spec, strict=strict)


def gesture_set_document(gesture_set: GestureSet) -> dict:
    gestures = []
    for rec in gesture_set.records:
        entry = {
            "id": rec.id,
            "name": rec.name,
            "category": rec.category.value,
            "source": rec.source,
            "pose": rec.pose.to_document(),
        }
        if rec.notes:
            entry["notes"] = rec.notes
        gestures.append(entry)
    return {"hand_spec_ref": gesture_set.hand_spec_ref, "gestures": gestures}


# ---------------------------------------------------------------------------
# Lookup and scoring


def find_gesture(gesture_set: GestureSet, gesture_id: str) -> GestureRecord:
    """Case-sensitive id lookup; misses raise with nearest-name suggestions."""
    rec = gesture_set.get(gesture_id)
    if rec is not None:
        return rec
    suggestions = difflib.get_close_matches(gesture_id, gesture_set.ids(), n=3, cutoff=0.6)
    raise GestureNotFoundError(gesture_id, tuple(suggestions))


def kapandji_score(
    gesture_set: GestureSet,
    spec: HandSpec,
    coupling: CouplingConfig,
    residual_tol_deg: float = 2.0,
) -> int:
    """Highest thumb-opposition score k whose positions 0..k are all executable.

    The 11 Kapandji records represent scores 0..10 in document order. Returns
    -1 in the degenerate case where even position 0 fails.
    """
    records = gesture_set.by_category(GestureCategory.KAPANDJI)
    if len(records) != 11:
        raise ConfigurationError(
            f"expected 11 Kapandji records (scores 0..10), found {len(records)}"
        )
    score = -1
    for k, rec in enumerate(records):
        if not pose_executability(rec.pose, spec, coupling, residual_tol_deg).ok:
            break
        score = k
    return score
