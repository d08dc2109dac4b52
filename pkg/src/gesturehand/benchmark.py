"""Three-level grasping/manipulation benchmark, evaluated kinematically.

Level 1 runs each of the 62 base gestures as a single-pose feasibility check.
Level 2 compiles multi-gesture key-frame scripts and validates the resulting
trajectories. Level 3 reruns the same scripts under time and/or gesture-count
budgets. Pass/fail is kinematic feasibility throughout: ROM-clean frames,
coupling residual within tolerance, and bounded per-frame steps.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .actuation import CouplingConfig
from .choreography import (
    ManipulationScript,
    compile_script,
    load_script,
    trajectory_metrics,
    validate_trajectory,
)
from .errors import CompileError, ConfigurationError, GestureNotFoundError, SchemaError
from .gestures import GestureSet, find_gesture, pose_executability
from .hand_model import HandSpec
from .jsonio import read_json

RESIDUAL_TOL_DEG = 2.0
DEFAULT_MAX_STEP_DEG = 5.0


class BenchmarkLevel(enum.Enum):
    L1_SINGLE = "L1_Single"
    L2_COMPLEX = "L2_Complex"
    L3_CCM = "L3_CCM"


@dataclass(frozen=True)
class Budget:
    max_seconds: Optional[float] = None
    max_gestures: Optional[int] = None

    def __post_init__(self):
        if self.max_seconds is None and self.max_gestures is None:
            raise ValueError("a budget needs max_seconds and/or max_gestures")


@dataclass(frozen=True)
class TaskDef:
    id: str
    level: BenchmarkLevel
    gesture_id: Optional[str] = None
    script: Optional[ManipulationScript] = None
    budget: Optional[Budget] = None

    def __post_init__(self):
        if self.level == BenchmarkLevel.L1_SINGLE:
            if self.gesture_id is None or self.script is not None:
                raise ValueError(f"task {self.id!r}: level 1 takes a gesture id payload")
        else:
            if self.script is None or self.gesture_id is not None:
                raise ValueError(f"task {self.id!r}: levels 2/3 take a script payload")
        if self.level == BenchmarkLevel.L3_CCM:
            if self.budget is None:
                raise ValueError(f"task {self.id!r}: level 3 requires a budget")
        elif self.budget is not None:
            raise ValueError(f"task {self.id!r}: only level 3 tasks carry a budget")


@dataclass(frozen=True)
class Measured:
    duration_s: float
    gesture_count: int


@dataclass(frozen=True)
class TaskResult:
    task_id: str
    level: BenchmarkLevel
    passed: bool
    diagnostics: tuple[str, ...]
    measured: Optional[Measured] = None


def run_level1(
    gesture_set: GestureSet, spec: HandSpec, coupling: CouplingConfig
) -> list[TaskResult]:
    """Feasibility check of every gesture in the shipped 62-record suite."""
    if len(gesture_set) != 62:
        raise ConfigurationError(
            f"level 1 expects the 62-gesture suite, found {len(gesture_set)} records"
        )
    results = []
    for rec in gesture_set:
        report = pose_executability(rec.pose, spec, coupling, RESIDUAL_TOL_DEG)
        results.append(
            TaskResult(
                task_id=f"l1_{rec.id}",
                level=BenchmarkLevel.L1_SINGLE,
                passed=report.ok,
                diagnostics=tuple(report.problems()),
                measured=Measured(duration_s=0.0, gesture_count=1),
            )
        )
    return results


def run_task(
    task: TaskDef,
    gesture_set: GestureSet,
    spec: HandSpec,
    coupling: CouplingConfig,
    max_step_deg: float = DEFAULT_MAX_STEP_DEG,
) -> TaskResult:
    """Evaluate one task; compile failures become failed results, not exceptions."""
    if task.level == BenchmarkLevel.L1_SINGLE:
        try:
            rec = find_gesture(gesture_set, task.gesture_id)
        except GestureNotFoundError as exc:
            return TaskResult(task.id, task.level, False, (str(exc),))
        report = pose_executability(rec.pose, spec, coupling, RESIDUAL_TOL_DEG)
        return TaskResult(
            task_id=task.id,
            level=task.level,
            passed=report.ok,
            diagnostics=tuple(report.problems()),
            measured=Measured(duration_s=0.0, gesture_count=1),
        )

    try:
        trajectory = compile_script(task.script, gesture_set, spec, coupling)
    except CompileError as exc:
        return TaskResult(task.id, task.level, False, (str(exc),))
    report = validate_trajectory(trajectory, spec, coupling, max_step_deg)
    diagnostics = report.problems(RESIDUAL_TOL_DEG)
    metrics = trajectory_metrics(trajectory)
    measured = Measured(duration_s=metrics.duration_s, gesture_count=metrics.gesture_count)

    if task.level == BenchmarkLevel.L3_CCM:
        budget = task.budget
        if budget.max_seconds is not None and metrics.duration_s > budget.max_seconds:
            diagnostics.append(
                f"duration {metrics.duration_s:g} s exceeds budget "
                f"{budget.max_seconds:g} s (excess {metrics.duration_s - budget.max_seconds:g} s)"
            )
        if budget.max_gestures is not None and metrics.gesture_count > budget.max_gestures:
            diagnostics.append(
                f"gesture count {metrics.gesture_count} exceeds budget "
                f"{budget.max_gestures} (excess {metrics.gesture_count - budget.max_gestures})"
            )

    return TaskResult(
        task_id=task.id,
        level=task.level,
        passed=not diagnostics,
        diagnostics=tuple(diagnostics),
        measured=measured,
    )


@dataclass(frozen=True)
class LevelSummary:
    level: BenchmarkLevel
    total: int
    passed: int

    @property
    def pass_rate(self) -> Optional[float]:
        return None if self.total == 0 else self.passed / self.total


@dataclass(frozen=True)
class SuiteReport:
    results: tuple[TaskResult, ...]

    def summary(self) -> list[LevelSummary]:
        out = []
        for level in BenchmarkLevel:
            subset = [r for r in self.results if r.level == level]
            out.append(
                LevelSummary(
                    level=level,
                    total=len(subset),
                    passed=sum(1 for r in subset if r.passed),
                )
            )
        return out

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_document(self) -> dict:
        levels = {}
        for s in self.summary():
            levels[s.level.value] = {
                "total": s.total,
                "passed": s.passed,
                "pass_rate": "n/a" if s.pass_rate is None else s.pass_rate,
            }
        return {
            "levels": levels,
            "all_passed": self.all_passed,
            "results": [
                {
                    "task_id": r.task_id,
                    "level": r.level.value,
                    "passed": r.passed,
                    "diagnostics": list(r.diagnostics),
                    "measured": (
                        None
                        if r.measured is None
                        else {
                            "duration_s": r.measured.duration_s,
                            "gesture_count": r.measured.gesture_count,
                        }
                    ),
                }
                for r in self.results
            ],
        }

    def render_text(self) -> str:
        lines = []
        for s in self.summary():
            rate = "n/a" if s.pass_rate is None else f"{100 * s.pass_rate:.1f}%"
            lines.append(f"{s.level.value}: {s.passed}/{s.total} passed ({rate})")
        lines.append("")
        width = max((len(r.task_id) for r in self.results), default=8)
        lines.append(f"{'task':<{width}}  {'level':<10}  result")
        for r in self.results:
            verdict = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.task_id:<{width}}  {r.level.value:<10}  {verdict}")
            for diag in r.diagnostics:
                lines.append(f"{'':<{width}}    - {diag}")
        return "\n".join(lines) + "\n"


def run_suite(
    tasks: Sequence[TaskDef],
    gesture_set: GestureSet,
    spec: HandSpec,
    coupling: CouplingConfig,
    max_step_deg: float = DEFAULT_MAX_STEP_DEG,
) -> SuiteReport:
    results = tuple(
        run_task(task, gesture_set, spec, coupling, max_step_deg) for task in tasks
    )
    return SuiteReport(results=results)


# ---------------------------------------------------------------------------
# Suite documents


def parse_task_def(entry: Mapping, path: str, script_dir: Optional[Path]) -> TaskDef:
    if not isinstance(entry, Mapping):
        raise SchemaError(f"{path}: expected an object")
    task_id = entry.get("id")
    if not isinstance(task_id, str) or not task_id:
        raise SchemaError(f"{path}.id: expected a non-empty string")
    try:
        level = BenchmarkLevel(entry.get("level"))
    except ValueError:
        raise SchemaError(
            f"{path}.level: expected one of {[l.value for l in BenchmarkLevel]}"
        ) from None

    gesture_id = entry.get("gesture")
    script = None
    raw_script = entry.get("script")
    if raw_script is not None:
        if isinstance(raw_script, str):
            script_path = Path(raw_script)
            if not script_path.is_absolute() and script_dir is not None:
                script_path = script_dir / script_path
            script = load_script(script_path)
        elif isinstance(raw_script, Mapping):
            script = load_script(raw_script)
        else:
            raise SchemaError(f"{path}.script: expected a path string or script object")

    budget = None
    raw_budget = entry.get("budget")
    if raw_budget is not None:
        if not isinstance(raw_budget, Mapping):
            raise SchemaError(f"{path}.budget: expected an object")
        max_seconds = raw_budget.get("max_seconds")
        max_gestures = raw_budget.get("max_gestures")
        if max_seconds is not None and (
            not isinstance(max_seconds, (int, float)) or isinstance(max_seconds, bool)
        ):
            raise SchemaError(f"{path}.budget.max_seconds: expected a number")
        if max_gestures is not None and (
            not isinstance(max_gestures, int) or isinstance(max_gestures, bool)
        ):
            raise SchemaError(f"{path}.budget.max_gestures: expected an integer")
        budget = Budget(max_seconds=max_seconds, max_gestures=max_gestures)

    try:
        return TaskDef(
            id=task_id, level=level, gesture_id=gesture_id, script=script, budget=budget
        )
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from None


def load_suite(source, script_dir: Optional[Path] = None) -> list[TaskDef]:
    """Load a suite document (a JSON array of task definitions).

    Relative script paths resolve against ``script_dir``, defaulting to the
    suite file's own directory.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        doc = read_json(path)
        if script_dir is None:
            script_dir = path.parent
    else:
        doc = source
    if not isinstance(doc, list):
        raise SchemaError("suite: expected a JSON array of task definitions")
    return [
        parse_task_def(entry, f"tasks[{i}]", script_dir) for i, entry in enumerate(doc)
    ]
