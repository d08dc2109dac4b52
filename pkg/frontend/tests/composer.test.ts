import { describe, expect, it } from "vitest";

import {
  addKeyFrame,
  canCompile,
  canExport,
  clampInterval,
  currentFrame,
  initialState,
  moveKeyFrame,
  removeKeyFrame,
  setCompiled,
  setCursor,
  setInterval_,
  setPlaying,
  undo,
  violatingJointsAt,
  type ComposerState,
  type Preview,
} from "../src/composer.js";
import type { Pose } from "../src/types.js";
import { DIGITS, ROLES } from "../src/types.js";

const PEN_SEQUENCE = [
  "palmar_pinch",
  "adduction_grip",
  "tripod",
  "palmar_pinch",
  "prismatic_2_finger",
];

function zeroPose(value = 0): Pose {
  const pose = {} as Pose;
  for (const digit of DIGITS) {
    pose[digit] = {} as Pose[typeof digit];
    for (const role of ROLES) pose[digit][role] = value;
  }
  return pose;
}

function composed(ids: string[]): ComposerState {
  let state = initialState();
  for (const id of ids) state = addKeyFrame(state, id);
  return state;
}

function fakePreview(frameCount: number): Preview {
  return {
    frames: Array.from({ length: frameCount }, (_, i) => zeroPose(i)),
    keyFrameIndices: [0, frameCount - 1],
    frameRateFps: 2,
    validation: {
      ok: true,
      violations: [],
      max_residual_deg: 0,
      max_step_deg: 0,
      step_flags: [],
    },
  };
}

describe("timeline editing", () => {
  it("composing the five pen-rotation key frames enables compile", () => {
    const state = composed(PEN_SEQUENCE);
    expect(state.timeline.map((e) => e.gestureId)).toEqual(PEN_SEQUENCE);
    expect(canCompile(state)).toBe(true);
    expect(canExport(state)).toBe(true);
  });

  it("compile stays disabled below two key frames", () => {
    expect(canCompile(initialState())).toBe(false);
    expect(canCompile(composed(["tripod"]))).toBe(false);
    const down = removeKeyFrame(composed(["tripod", "lateral"]), 1);
    expect(canCompile(down)).toBe(false);
    expect(canExport(down)).toBe(false);
  });

  it("interval input is clamped to at least one frame", () => {
    expect(clampInterval(0)).toEqual({ value: 1, clamped: true });
    expect(clampInterval(-5)).toEqual({ value: 1, clamped: true });
    expect(clampInterval(7)).toEqual({ value: 7, clamped: false });
    const state = composed(["tripod", "lateral"]);
    const { state: next, clamped } = setInterval_(state, 1, 0);
    expect(clamped).toBe(true);
    expect(next.timeline[1]!.intervalFrames).toBe(1);
  });

  it("reorder then undo restores the original state", () => {
    const original = composed(PEN_SEQUENCE);
    const reordered = moveKeyFrame(original, 1, 3);
    expect(reordered.timeline.map((e) => e.gestureId)).not.toEqual(PEN_SEQUENCE);
    const restored = undo(reordered);
    expect(restored.timeline).toEqual(original.timeline);
  });

  it("undo walks back through several edits", () => {
    let state = composed(["tripod", "lateral"]);
    state = removeKeyFrame(state, 0);
    state = addKeyFrame(state, "stick");
    state = undo(state);
    expect(state.timeline.map((e) => e.gestureId)).toEqual(["lateral"]);
    state = undo(state);
    expect(state.timeline.map((e) => e.gestureId)).toEqual(["tripod", "lateral"]);
  });

  it("out-of-range edits are no-ops", () => {
    const state = composed(["tripod", "lateral"]);
    expect(removeKeyFrame(state, 5)).toBe(state);
    expect(moveKeyFrame(state, 0, 9)).toBe(state);
    expect(setInterval_(state, 9, 4).state).toBe(state);
  });
});

describe("preview staleness", () => {
  it("any timeline mutation marks the preview stale and stops playback", () => {
    let state = setCompiled(composed(PEN_SEQUENCE), fakePreview(41));
    expect(state.previewStale).toBe(false);
    state = setPlaying(state, true);
    expect(state.playing).toBe(true);

    for (const mutate of [
      (s: ComposerState) => addKeyFrame(s, "stick"),
      (s: ComposerState) => removeKeyFrame(s, 0),
      (s: ComposerState) => moveKeyFrame(s, 0, 1),
      (s: ComposerState) => setInterval_(s, 1, 4).state,
    ]) {
      const next = mutate(state);
      expect(next.previewStale).toBe(true);
      expect(next.playing).toBe(false);
    }
  });

  it("stale previews never play or render as current", () => {
    let state = setCompiled(composed(PEN_SEQUENCE), fakePreview(41));
    expect(currentFrame(state)).not.toBeNull();
    state = addKeyFrame(state, "stick");
    expect(currentFrame(state)).toBeNull();
    expect(setPlaying(state, true).playing).toBe(false);
  });

  it("recompiling clears the stale flag and resets the cursor", () => {
    let state = setCompiled(composed(PEN_SEQUENCE), fakePreview(41));
    state = setCursor(state, 20);
    state = addKeyFrame(state, "stick");
    state = setCompiled(state, fakePreview(51));
    expect(state.previewStale).toBe(false);
    expect(state.cursor).toBe(0);
  });
});

describe("playback cursor", () => {
  it("scrubbing to a key-frame index exposes that exact frame", () => {
    const preview = fakePreview(41);
    let state = setCompiled(composed(PEN_SEQUENCE), preview);
    for (const idx of preview.keyFrameIndices) {
      state = setCursor(state, idx);
      expect(currentFrame(state)).toBe(preview.frames[idx]);
    }
  });

  it("cursor is clamped to the frame range", () => {
    let state = setCompiled(composed(PEN_SEQUENCE), fakePreview(41));
    expect(setCursor(state, -3).cursor).toBe(0);
    expect(setCursor(state, 999).cursor).toBe(40);
  });

  it("per-frame violation lookup", () => {
    const preview = fakePreview(5);
    preview.validation = {
      ok: false,
      violations: [
        { frame: 2, joint: "index.j3_base", angle_deg: 90, excess_deg: 8, note: "above max 82" },
        { frame: 2, joint: "middle.j2_middle", angle_deg: 85, excess_deg: 5, note: "above max 80" },
        { frame: 4, joint: "index.j3_base", angle_deg: 95, excess_deg: 13, note: "above max 82" },
      ],
      max_residual_deg: 0,
      max_step_deg: 0,
      step_flags: [],
    };
    const state = setCompiled(composed(PEN_SEQUENCE), preview);
    expect(violatingJointsAt(state, 2)).toEqual(
      new Set(["index.j3_base", "middle.j2_middle"]),
    );
    expect(violatingJointsAt(state, 3).size).toBe(0);
  });
});
