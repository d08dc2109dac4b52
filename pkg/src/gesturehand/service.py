"""Stateless HTTP/JSON facade over the library for the companion UI.

Every endpoint is a thin serialization of the corresponding library call over
state loaded once at startup; identical requests always produce identical
responses. Errors use a {code, message, details} envelope.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .actuation import CouplingConfig
from .choreography import compile_script, interpolate_segment, parse_script, trajectory_metrics, validate_trajectory
from .defaults import default_gestures_path, default_hand_spec_path
from .errors import CompileError, GestureNotFoundError, SchemaError
from .gestures import GestureCategory, GestureSet, find_gesture, gesture_set_document, load_gesture_set
from .hand_model import (
    DIGITS,
    FK_POINT_LABELS,
    HandPose,
    HandSpec,
    forward_kinematics,
    hand_spec_json,
    load_hand_spec,
    validate_pose,
)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details: Optional[dict] = None):
        self.status = status
        self.code = code
        self.message = message
        self.details = details or {}
        super().__init__(message)


def _gesture_entry(record) -> dict:
    entry = {
        "id": record.id,
        "name": record.name,
        "category": record.category.value,
        "source": record.source,
        "pose": record.pose.to_document(),
    }
    if record.notes:
        entry["notes"] = record.notes
    return entry


def _violations_summary(frames, spec: HandSpec) -> dict:
    violations = []
    for i, pose in enumerate(frames):
        for v in validate_pose(pose, spec, "ours"):
            violations.append(
                {
                    "frame": i,
                    "joint": f"{v.digit.key}.{v.role.key}",
                    "angle_deg": v.angle_deg,
                    "excess_deg": v.excess_deg,
                    "note": v.note,
                }
            )
    return {"ok": not violations, "violations": violations}


def _resolve_pose(value, gesture_set: GestureSet, field: str) -> HandPose:
    if isinstance(value, str):
        try:
            return find_gesture(gesture_set, value).pose
        except GestureNotFoundError as exc:
            raise ApiError(
                400,
                "unknown_gesture",
                f"{field}: unknown gesture id {value!r}",
                {"suggestions": list(exc.suggestions)},
            ) from exc
    if isinstance(value, dict):
        try:
            return HandPose.from_document(value, path=field)
        except SchemaError as exc:
            raise ApiError(400, "invalid_pose", str(exc)) from exc
    raise ApiError(400, "invalid_request", f"{field}: expected a gesture id or a pose object")


async def _json_body(request: Request) -> dict:
    try:
        body = await request.json()
    except Exception as exc:
        raise ApiError(400, "invalid_json", f"request body is not valid JSON: {exc}") from exc
    if not isinstance(body, dict):
        raise ApiError(400, "invalid_request", "request body must be a JSON object")
    return body


def create_app(hand_spec_path=None, gestures_path=None) -> FastAPI:
    spec = load_hand_spec(Path(hand_spec_path) if hand_spec_path else default_hand_spec_path())
    gesture_set = load_gesture_set(
        Path(gestures_path) if gestures_path else default_gestures_path(), spec
    )
    coupling = CouplingConfig.default_from_spec(spec)
    spec_bytes = hand_spec_json(spec).encode("utf-8")

    app = FastAPI(title="gesturehand", version="0.1.0", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"code": exc.code, "message": exc.message, "details": exc.details},
        )

    @app.get("/api/hand-spec")
    def get_hand_spec() -> Response:
        return Response(content=spec_bytes, media_type="application/json")

    @app.get("/api/gestures")
    def list_gestures(category: Optional[str] = None):
        records = gesture_set.records
        if category is not None:
            try:
                wanted = GestureCategory(category)
            except ValueError:
                raise ApiError(
                    400,
                    "invalid_category",
                    f"unknown category {category!r}",
                    {"valid": [c.value for c in GestureCategory]},
                ) from None
            records = gesture_set.by_category(wanted)
        return {"gestures": [_gesture_entry(rec) for rec in records]}

    @app.get("/api/gestures/{gesture_id}")
    def get_gesture(gesture_id: str):
        try:
            record = find_gesture(gesture_set, gesture_id)
        except GestureNotFoundError as exc:
            raise ApiError(
                404,
                "gesture_not_found",
                f"unknown gesture id {gesture_id!r}",
                {"suggestions": list(exc.suggestions)},
            ) from exc
        return _gesture_entry(record)

    @app.post("/api/interpolate")
    async def interpolate(request: Request):
        body = await _json_body(request)
        T = body.get("T")
        if not isinstance(T, int) or isinstance(T, bool) or T < 1:
            raise ApiError(400, "invalid_interval", "T must be an integer >= 1")
        start = _resolve_pose(body.get("from"), gesture_set, "from")
        end = _resolve_pose(body.get("to"), gesture_set, "to")
        frames = interpolate_segment(start, end, T)
        return {
            "frames": [pose.to_document() for pose in frames],
            "validation": _violations_summary(frames, spec),
        }

    @app.post("/api/compile")
    async def compile_endpoint(request: Request):
        body = await _json_body(request)
        try:
            script = parse_script(body.get("script"), path="script")
        except SchemaError as exc:
            raise ApiError(400, "invalid_script", str(exc)) from exc
        try:
            trajectory = compile_script(script, gesture_set, spec, coupling)
        except CompileError as exc:
            raise ApiError(400, "compile_failed", str(exc)) from exc
        metrics = trajectory_metrics(trajectory)
        report = validate_trajectory(trajectory, spec, coupling)
        return {
            "trajectory": {
                "frames": [pose.to_document() for pose in trajectory.frames],
                "key_frame_indices": list(trajectory.key_frame_indices),
                "frame_rate_fps": trajectory.frame_rate_fps,
            },
            "metrics": {
                "duration_s": metrics.duration_s,
                "gesture_count": metrics.gesture_count,
                "frame_count": metrics.frame_count,
            },
            "validation": {
                "ok": report.clean(),
                "violations": [
                    {
                        "frame": fv.frame,
                        "joint": f"{fv.violation.digit.key}.{fv.violation.role.key}",
                        "angle_deg": fv.violation.angle_deg,
                        "excess_deg": fv.violation.excess_deg,
                        "note": fv.violation.note,
                    }
                    for fv in report.rom_violations
                ],
                "max_residual_deg": report.max_residual_deg,
                "max_step_deg": report.max_step_deg,
                "step_flags": [str(f) for f in report.step_flags],
            },
        }

    @app.post("/api/fk")
    async def fk_endpoint(request: Request):
        body = await _json_body(request)
        pose = _resolve_pose(body.get("pose"), gesture_set, "pose")
        digits = {}
        for digit in DIGITS:
            points = forward_kinematics(pose, spec, digit)
            digits[digit.key] = [[float(c) for c in p] for p in points]
        return {
            "digits": digits,
            "point_labels": list(FK_POINT_LABELS),
            "validation": _violations_summary([pose], spec),
        }

    return app
