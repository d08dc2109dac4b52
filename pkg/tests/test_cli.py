import json

import pytest

from gesturehand.cli import main
from gesturehand.defaults import default_gestures_path, default_scripts_dir
from gesturehand.jsonio import read_json


def run(argv):
    return main(argv)


class TestValidate:
    def test_default_gestures_ok(self, capsys):
        assert run(["validate", "--gestures", "default"]) == 0
        assert "62 gestures OK" in capsys.readouterr().out

    def test_violating_file_exits_one(self, tmp_path, capsys):
        doc = read_json(default_gestures_path())
        doc["gestures"][0]["pose"]["index"]["j3_base"] = 95.0
        bad = tmp_path / "gestures.json"
        bad.write_text(json.dumps(doc), encoding="utf-8")
        assert run(["--gestures", str(bad), "validate"]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out and "above max 82" in out

    def test_missing_file_exits_two(self, capsys):
        assert run(["--gestures", "/no/such/file.json", "validate"]) == 2
        assert "error" in capsys.readouterr().err

    def test_malformed_document_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "gestures.json"
        bad.write_text('{"hand_spec_ref": "x"}', encoding="utf-8")
        assert run(["--gestures", str(bad), "validate"]) == 2

    def test_script_validation(self, capsys):
        script = str(default_scripts_dir() / "pen_rotation.json")
        assert run(["validate", "--script", script]) == 0
        assert "pen_rotation OK (41 frames)" in capsys.readouterr().out

    def test_script_with_unknown_gesture_exits_one(self, tmp_path, capsys):
        doc = {
            "name": "bad",
            "frame_rate_fps": 2.0,
            "key_frames": [
                {"gesture": "tripod"},
                {"gesture": "missing", "interval_frames": 4},
            ],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert run(["validate", "--script", str(path)]) == 1


class TestAnalyze:
    def test_coverage_text_reports_both_percentages(self, capsys):
        assert run(["analyze", "coverage"]) == 0
        out = capsys.readouterr().out
        assert "83.7%" in out  # per-joint mean vs human
        assert "89.9%" in out  # per-joint mean vs grasping
        assert "Ring.J4_AbdAdd" in out

    def test_coverage_json_is_stable(self, capsys):
        assert run(["analyze", "coverage", "--format", "json"]) == 0
        first = capsys.readouterr().out
        assert run(["analyze", "coverage", "--format", "json"]) == 0
        second = capsys.readouterr().out
        assert first == second
        doc = json.loads(first)
        assert doc["ours_vs_human"]["per-joint-mean/exclude-absent"] == pytest.approx(
            0.8366, abs=1e-3
        )

    def test_trajectory_polyline(self, tmp_path, capsys):
        out_csv = tmp_path / "tips.csv"
        assert run([
            "analyze", "trajectory", "--digit", "index", "--samples", "50",
            "--output", str(out_csv),
        ]) == 0
        lines = out_csv.read_text(encoding="utf-8").strip().split("\n")
        assert lines[0] == "sample,x_mm,y_mm,z_mm"
        assert len(lines) == 51
        assert "spiral fit (index)" in capsys.readouterr().out

    def test_tendon_regression_from_csv(self, tmp_path, capsys):
        data = tmp_path / "points.csv"
        rows = ["joint,excursion_mm,angle_deg"]
        for e in range(11):
            rows.append(f"index.j3,{e},{9.0 * e + 1.0}")
        data.write_text("\n".join(rows) + "\n", encoding="utf-8")
        assert run(["analyze", "tendon", "--data", str(data)]) == 0
        out = capsys.readouterr().out
        assert "index.j3" in out and "a=9" in out and "r_squared=1" in out

    def test_tendon_requires_data(self, capsys):
        assert run(["analyze", "tendon"]) == 2

    def test_tendon_malformed_csv(self, tmp_path, capsys):
        data = tmp_path / "points.csv"
        data.write_text("nope,columns\n1,2\n", encoding="utf-8")
        assert run(["analyze", "tendon", "--data", str(data)]) == 2


class TestCompile:
    def test_pen_rotation_artifacts(self, tmp_path, capsys):
        script = str(default_scripts_dir() / "pen_rotation.json")
        assert run(["compile", script, "--output-dir", str(tmp_path)]) == 0
        trajectory = (tmp_path / "pen_rotation_trajectory.csv").read_text(encoding="utf-8")
        actuators = (tmp_path / "pen_rotation_actuators.csv").read_text(encoding="utf-8")
        assert len(trajectory.strip().split("\n")) == 42  # header + 41 frames
        assert len(actuators.strip().split("\n")) == 42
        out = capsys.readouterr().out
        assert "41 frames, 5 gestures, 20 s" in out

    def test_missing_script_exits_two(self):
        assert run(["compile", "/no/such/script.json"]) == 2

    def test_unknown_gesture_exits_one(self, tmp_path, capsys):
        doc = {
            "name": "bad",
            "frame_rate_fps": 2.0,
            "key_frames": [
                {"gesture": "tripod"},
                {"gesture": "missing", "interval_frames": 4},
            ],
        }
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc), encoding="utf-8")
        assert run(["compile", str(path), "--output-dir", str(tmp_path)]) == 1


class TestBench:
    def test_level1_table(self, capsys):
        assert run(["bench", "--level", "1"]) == 0
        out = capsys.readouterr().out
        assert "L1_Single: 62/62 passed" in out
        assert out.count("PASS") == 62

    def test_full_suite_exit_zero(self, capsys):
        assert run(["bench"]) == 0
        out = capsys.readouterr().out
        for level in ("L1_Single", "L2_Complex", "L3_CCM"):
            assert level in out

    def test_failing_suite_exits_one(self, tmp_path, capsys):
        suite = [{"id": "bad", "level": "L1_Single", "gesture": "nope"}]
        path = tmp_path / "suite.json"
        path.write_text(json.dumps(suite), encoding="utf-8")
        assert run(["bench", "--suite", str(path)]) == 1

    def test_json_report(self, tmp_path):
        out_path = tmp_path / "report.json"
        assert run(["bench", "--level", "3", "--format", "json", "--output", str(out_path)]) == 0
        doc = json.loads(out_path.read_text(encoding="utf-8"))
        assert doc["all_passed"] is True
        assert doc["levels"]["L3_CCM"]["total"] == 7


class TestExport:
    def test_copies_shipped_data(self, tmp_path, capsys):
        assert run(["export", "--output", str(tmp_path)]) == 0
        assert (tmp_path / "hand_spec.json").exists()
        assert (tmp_path / "gestures.json").exists()
        assert (tmp_path / "suite.json").exists()
        scripts = sorted(p.name for p in (tmp_path / "scripts").glob("*.json"))
        assert len(scripts) == 7
        assert "pen_rotation.json" in scripts
        exported = (tmp_path / "hand_spec.json").read_bytes()
        from gesturehand.defaults import default_hand_spec_path

        assert exported == default_hand_spec_path().read_bytes()


class TestUsage:
    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as excinfo:
            run(["validate", "--frobnicate"])
        assert excinfo.value.code == 2

    def test_no_command_exits_two(self):
        with pytest.raises(SystemExit) as excinfo:
            run([])
        assert excinfo.value.code == 2

    @pytest.mark.parametrize(
        "command", ["validate", "analyze", "compile", "bench", "export", "serve"]
    )
    def test_every_command_has_help(self, command, capsys):
        with pytest.raises(SystemExit) as excinfo:
            run([command, "--help"])
        assert excinfo.value.code == 0
        assert "usage" in capsys.readouterr().out
