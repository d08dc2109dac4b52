import pytest

from gesturehand.benchmark import (
    BenchmarkLevel,
    Budget,
    TaskDef,
    load_suite,
    run_level1,
    run_suite,
    run_task,
)
from gesturehand.choreography import load_script
from gesturehand.defaults import default_scripts_dir, default_suite_path
from gesturehand.errors import ConfigurationError, SchemaError
from gesturehand.gestures import parse_gesture_set, pose_executability
from gesturehand.jsonio import read_json


@pytest.fixture(scope="module")
def pen_script():
    return load_script(default_scripts_dir() / "pen_rotation.json")


@pytest.fixture(scope="module")
def suite_tasks():
    return load_suite(default_suite_path())


class TestTaskDef:
    def test_level_payload_consistency(self, pen_script):
        with pytest.raises(ValueError, match="gesture id payload"):
            TaskDef(id="t", level=BenchmarkLevel.L1_SINGLE, script=pen_script)
        with pytest.raises(ValueError, match="script payload"):
            TaskDef(id="t", level=BenchmarkLevel.L2_COMPLEX, gesture_id="tripod")

    def test_budget_only_on_level3(self, pen_script):
        budget = Budget(max_seconds=10)
        with pytest.raises(ValueError, match="requires a budget"):
            TaskDef(id="t", level=BenchmarkLevel.L3_CCM, script=pen_script)
        with pytest.raises(ValueError, match="only level 3"):
            TaskDef(id="t", level=BenchmarkLevel.L2_COMPLEX, script=pen_script, budget=budget)

    def test_budget_needs_a_limit(self):
        with pytest.raises(ValueError):
            Budget()


class TestRunLevel1:
    def test_shipped_suite_all_pass(self, spec, coupling, gesture_set):
        results = run_level1(gesture_set, spec, coupling)
        assert len(results) == 62
        assert all(r.passed for r in results)

    def test_wrong_cardinality_rejected(self, spec, coupling, gesture_set):
        from gesturehand.gestures import GestureSet

        truncated = GestureSet(
            records=gesture_set.records[:10], hand_spec_ref=gesture_set.hand_spec_ref
        )
        with pytest.raises(ConfigurationError, match="62"):
            run_level1(truncated, spec, coupling)

    def test_one_bad_record_fails_exactly_once(self, spec, coupling):
        from gesturehand.defaults import default_gestures_path

        doc = read_json(default_gestures_path())
        doc["gestures"][0]["pose"]["index"]["j3_base"] = 95.0
        loaded = parse_gesture_set(doc, spec, strict=False)
        results = run_level1(loaded, spec, coupling)
        assert sum(not r.passed for r in results) == 1

    def test_pass_equals_executability(self, spec, coupling, gesture_set):
        results = {r.task_id: r for r in run_level1(gesture_set, spec, coupling)}
        for rec in gesture_set:
            expected = pose_executability(rec.pose, spec, coupling, 2.0).ok
            assert results[f"l1_{rec.id}"].passed == expected


class TestRunTask:
    def test_pen_rotation_level2(self, spec, coupling, gesture_set, pen_script):
        task = TaskDef(id="pen", level=BenchmarkLevel.L2_COMPLEX, script=pen_script)
        result = run_task(task, gesture_set, spec, coupling)
        assert result.passed, result.diagnostics
        assert result.measured.gesture_count == 5
        assert result.measured.duration_s == pytest.approx(20.0)

    def test_gesture_budget_excess(self, spec, coupling, gesture_set, pen_script):
        task = TaskDef(
            id="pen",
            level=BenchmarkLevel.L3_CCM,
            script=pen_script,
            budget=Budget(max_gestures=4),
        )
        result = run_task(task, gesture_set, spec, coupling)
        assert not result.passed
        assert any("excess 1" in d for d in result.diagnostics)

    def test_time_budget_satisfied(self, spec, coupling, gesture_set, pen_script):
        task = TaskDef(
            id="pen",
            level=BenchmarkLevel.L3_CCM,
            script=pen_script,
            budget=Budget(max_seconds=30),
        )
        result = run_task(task, gesture_set, spec, coupling)
        assert result.passed
        assert result.measured.duration_s == pytest.approx(20.0)

    def test_infinite_budget_matches_level2(self, spec, coupling, gesture_set, suite_tasks):
        for task in suite_tasks:
            if task.level != BenchmarkLevel.L2_COMPLEX:
                continue
            l3 = TaskDef(
                id=task.id.replace("l2", "l3x"),
                level=BenchmarkLevel.L3_CCM,
                script=task.script,
                budget=Budget(max_seconds=float("inf")),
            )
            assert (
                run_task(l3, gesture_set, spec, coupling).passed
                == run_task(task, gesture_set, spec, coupling).passed
            )

    def test_unknown_gesture_becomes_failed_result(self, spec, coupling, gesture_set):
        task = TaskDef(id="bad", level=BenchmarkLevel.L1_SINGLE, gesture_id="nope")
        result = run_task(task, gesture_set, spec, coupling)
        assert not result.passed
        assert "nope" in result.diagnostics[0]

    def test_compile_error_becomes_failed_result(self, spec, coupling, gesture_set, pen_script):
        from gesturehand.choreography import KeyFrame, ManipulationScript

        broken = ManipulationScript(
            name="broken",
            key_frames=(KeyFrame("tripod"), KeyFrame("missing_one", interval_frames=4)),
            frame_rate_fps=2.0,
        )
        task = TaskDef(id="broken", level=BenchmarkLevel.L2_COMPLEX, script=broken)
        result = run_task(task, gesture_set, spec, coupling)
        assert not result.passed
        assert "missing_one" in result.diagnostics[0]

    def test_determinism(self, spec, coupling, gesture_set, pen_script):
        task = TaskDef(id="pen", level=BenchmarkLevel.L2_COMPLEX, script=pen_script)
        first = run_task(task, gesture_set, spec, coupling)
        second = run_task(task, gesture_set, spec, coupling)
        assert first == second


class TestSuite:
    def test_shipped_corpus_composition(self, suite_tasks):
        by_level = {level: 0 for level in BenchmarkLevel}
        for task in suite_tasks:
            by_level[task.level] += 1
        assert by_level[BenchmarkLevel.L1_SINGLE] == 62
        assert by_level[BenchmarkLevel.L2_COMPLEX] == 7
        assert by_level[BenchmarkLevel.L3_CCM] == 7

    def test_shipped_corpus_all_pass(self, spec, coupling, gesture_set, suite_tasks):
        report = run_suite(suite_tasks, gesture_set, spec, coupling)
        assert report.all_passed
        summary = {s.level: s for s in report.summary()}
        assert summary[BenchmarkLevel.L1_SINGLE].passed == 62
        assert summary[BenchmarkLevel.L2_COMPLEX].passed == 7
        assert summary[BenchmarkLevel.L3_CCM].passed == 7

    def test_empty_suite_reports_na(self, spec, coupling, gesture_set):
        report = run_suite([], gesture_set, spec, coupling)
        doc = report.to_document()
        assert doc["results"] == []
        for level_doc in doc["levels"].values():
            assert level_doc["pass_rate"] == "n/a"

    def test_one_failure_changes_the_rate(self, spec, coupling, gesture_set):
        tasks = [
            TaskDef(id="ok", level=BenchmarkLevel.L1_SINGLE, gesture_id="tripod"),
            TaskDef(id="bad", level=BenchmarkLevel.L1_SINGLE, gesture_id="nope"),
        ]
        report = run_suite(tasks, gesture_set, spec, coupling)
        summary = {s.level: s for s in report.summary()}
        assert summary[BenchmarkLevel.L1_SINGLE].pass_rate == pytest.approx(0.5)
        assert not report.all_passed

    def test_text_rendering_lists_failures(self, spec, coupling, gesture_set):
        tasks = [TaskDef(id="bad", level=BenchmarkLevel.L1_SINGLE, gesture_id="nope")]
        text = run_suite(tasks, gesture_set, spec, coupling).render_text()
        assert "FAIL" in text
        assert "bad" in text

    def test_suite_document_errors(self, tmp_path):
        bad = tmp_path / "suite.json"
        bad.write_text('{"not": "a list"}', encoding="utf-8")
        with pytest.raises(SchemaError, match="array"):
            load_suite(bad)
