import json

import pytest
from fastapi.testclient import TestClient

from gesturehand.choreography import compile_script, parse_script
from gesturehand.defaults import default_hand_spec_path, default_scripts_dir
from gesturehand.hand_model import HandPose
from gesturehand.jsonio import read_json
from gesturehand.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def pen_script_doc():
    return read_json(default_scripts_dir() / "pen_rotation.json")


class TestHandSpecEndpoint:
    def test_serves_the_source_document(self, client):
        response = client.get("/api/hand-spec")
        assert response.status_code == 200
        assert response.content == default_hand_spec_path().read_bytes()
        assert len(response.json()["joints"]) == 20

    def test_responses_are_byte_identical(self, client):
        first = client.get("/api/hand-spec").content
        second = client.get("/api/hand-spec").content
        assert first == second


class TestGestureEndpoints:
    def test_category_filter_counts(self, client):
        for category, count in (
            ("FeixGrasp", 33),
            ("Kapandji", 11),
            ("TranslationRotation", 18),
        ):
            response = client.get(f"/api/gestures?category={category}")
            assert response.status_code == 200
            assert len(response.json()["gestures"]) == count

    def test_unfiltered_list(self, client):
        response = client.get("/api/gestures")
        assert len(response.json()["gestures"]) == 62

    def test_invalid_category(self, client):
        response = client.get("/api/gestures?category=PowerGrasp")
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "invalid_category"
        assert "FeixGrasp" in body["details"]["valid"]

    def test_single_gesture(self, client):
        response = client.get("/api/gestures/tripod")
        assert response.status_code == 200
        body = response.json()
        assert body["name"] == "Tripod"
        assert set(body["pose"]) == {"thumb", "index", "middle", "ring", "little"}

    def test_unknown_id_gets_suggestions(self, client):
        response = client.get("/api/gestures/palmar_pnch")
        assert response.status_code == 404
        body = response.json()
        assert body["code"] == "gesture_not_found"
        assert "palmar_pinch" in body["details"]["suggestions"]


class TestInterpolateEndpoint:
    def test_identical_endpoints(self, client):
        pose = HandPose.zero().to_document()
        response = client.post(
            "/api/interpolate", json={"from": pose, "to": pose, "T": 5}
        )
        assert response.status_code == 200
        frames = response.json()["frames"]
        assert len(frames) == 5
        assert all(f == pose for f in frames)

    def test_last_frame_is_target_exactly(self, client):
        response = client.post(
            "/api/interpolate", json={"from": "palmar_pinch", "to": "tripod", "T": 10}
        )
        assert response.status_code == 200
        body = response.json()
        assert len(body["frames"]) == 10
        tripod = client.get("/api/gestures/tripod").json()["pose"]
        assert body["frames"][-1] == tripod
        assert body["validation"]["ok"] is True

    def test_invalid_interval(self, client):
        pose = HandPose.zero().to_document()
        response = client.post("/api/interpolate", json={"from": pose, "to": pose, "T": 0})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_interval"

    def test_unknown_gesture_id(self, client):
        response = client.post(
            "/api/interpolate", json={"from": "nope", "to": "tripod", "T": 5}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "unknown_gesture"

    def test_validation_reports_rom_breaks(self, client):
        inside = HandPose.zero().to_document()
        outside = HandPose.zero().to_document()
        outside["index"]["j3_base"] = 120.0
        response = client.post(
            "/api/interpolate", json={"from": inside, "to": outside, "T": 4}
        )
        body = response.json()
        assert body["validation"]["ok"] is False
        frames = {v["frame"] for v in body["validation"]["violations"]}
        assert frames == {2, 3}  # 90 and 120 degrees exceed the 82-degree limit


class TestCompileEndpoint:
    def test_pen_rotation(self, client, pen_script_doc, spec, coupling, gesture_set):
        response = client.post("/api/compile", json={"script": pen_script_doc})
        assert response.status_code == 200
        body = response.json()
        assert body["metrics"] == {
            "duration_s": 20.0,
            "gesture_count": 5,
            "frame_count": 41,
        }
        assert body["trajectory"]["key_frame_indices"] == [0, 10, 20, 30, 40]
        assert body["validation"]["ok"] is True
        # the endpoint mirrors the library call exactly
        trajectory = compile_script(
            parse_script(pen_script_doc), gesture_set, spec, coupling
        )
        assert body["trajectory"]["frames"] == [
            pose.to_document() for pose in trajectory.frames
        ]

    def test_unknown_gesture_in_script(self, client, pen_script_doc):
        doc = json.loads(json.dumps(pen_script_doc))
        doc["key_frames"][1]["gesture"] = "missing_gesture"
        response = client.post("/api/compile", json={"script": doc})
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "compile_failed"
        assert "missing_gesture" in body["message"]

    def test_malformed_script(self, client):
        response = client.post("/api/compile", json={"script": {"name": "x"}})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_script"

    def test_violations_are_structured(self, client):
        outside = HandPose.zero().to_document()
        outside["index"]["j3_base"] = 120.0
        script = {
            "name": "breaks_rom",
            "frame_rate_fps": 2.0,
            "key_frames": [
                {"pose": HandPose.zero().to_document()},
                {"pose": outside, "interval_frames": 4},
            ],
        }
        body = client.post("/api/compile", json={"script": script}).json()
        assert body["validation"]["ok"] is False
        joints = {(v["frame"], v["joint"]) for v in body["validation"]["violations"]}
        assert (4, "index.j3_base") in joints


class TestFkEndpoint:
    def test_zero_pose_straight_digits(self, client):
        response = client.post(
            "/api/fk", json={"pose": HandPose.zero().to_document()}
        )
        assert response.status_code == 200
        body = response.json()
        assert set(body["digits"]) == {"thumb", "index", "middle", "ring", "little"}
        index = body["digits"]["index"]
        assert len(index) == 5
        assert index[-1] == [93.0, 0.0, 0.0]

    def test_accepts_gesture_id(self, client):
        response = client.post("/api/fk", json={"pose": "tripod"})
        assert response.status_code == 200

    def test_malformed_pose(self, client):
        response = client.post("/api/fk", json={"pose": {"thumb": {}}})
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_pose"


class TestStatelessness:
    def test_interleaved_requests_are_reproducible(self, client, pen_script_doc):
        a1 = client.post("/api/compile", json={"script": pen_script_doc}).content
        _ = client.get("/api/gestures?category=Kapandji")
        _ = client.post("/api/fk", json={"pose": "stick"})
        a2 = client.post("/api/compile", json={"script": pen_script_doc}).content
        assert a1 == a2
