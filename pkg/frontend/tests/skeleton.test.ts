import { describe, expect, it } from "vitest";

import {
  DEFAULT_VIEW,
  DIGIT_PLACEMENTS,
  JOINT_POINT_INDEX,
  SKELETON_COLORS,
  drawSkeleton,
  layoutSkeleton,
  placeDigitPoint,
  projectPoint,
  type SkeletonCanvas,
} from "../src/skeleton.js";
import type { FkResponse } from "../src/types.js";
import { DIGITS } from "../src/types.js";

/** A straight-finger FK payload: 5 collinear points per digit, 93 mm reach. */
function straightFk(): FkResponse {
  const digits = {} as FkResponse["digits"];
  for (const digit of DIGITS) {
    digits[digit] = [
      [0, 0, 0],
      [0, 0, 0],
      [43, 0, 0],
      [68, 0, 0],
      [93, 0, 0],
    ];
  }
  return { digits, point_labels: ["base", "j3", "j2", "j1", "fingertip"], validation: { ok: true, violations: [] } };
}

class RecordingCanvas implements SkeletonCanvas {
  strokeStyle: string = "";
  fillStyle: string = "";
  lineWidth = 1;
  arcs: { x: number; y: number; r: number; fill: string }[] = [];
  strokes = 0;
  cleared = 0;
  private pendingArc: { x: number; y: number; r: number } | null = null;

  clearRect(): void {
    this.cleared += 1;
  }
  beginPath(): void {
    this.pendingArc = null;
  }
  moveTo(): void {}
  lineTo(): void {}
  arc(x: number, y: number, r: number): void {
    this.pendingArc = { x, y, r };
  }
  stroke(): void {
    this.strokes += 1;
  }
  fill(): void {
    if (this.pendingArc) {
      this.arcs.push({ ...this.pendingArc, fill: String(this.fillStyle) });
      this.pendingArc = null;
    }
  }
}

describe("projection", () => {
  it("flat view drops the palm-normal axis", () => {
    const view = { tiltDeg: 0, scale: 1, originU: 0, originV: 0 };
    expect(projectPoint([10, 5, -40], view)).toEqual([5, -10]);
  });

  it("tilt makes flexion depth visible", () => {
    const view = { tiltDeg: 90, scale: 1, originU: 0, originV: 0 };
    const [, v] = projectPoint([0, 0, -40], view);
    expect(v).toBeCloseTo(40, 10);
  });

  it("digit placement applies the documented offsets", () => {
    const [x, y] = placeDigitPoint([0, 0, 0], "index");
    expect(x).toBeCloseTo(DIGIT_PLACEMENTS.index.offsetX, 10);
    expect(y).toBeCloseTo(DIGIT_PLACEMENTS.index.offsetY, 10);
    // the thumb's fixed yaw swings its tip sideways in the palm plane
    const tip = placeDigitPoint([93, 0, 0], "thumb");
    expect(tip[1]).toBeLessThan(DIGIT_PLACEMENTS.thumb.offsetY);
    expect(tip[2]).toBe(0);
  });
});

describe("layoutSkeleton", () => {
  it("renders all 20 joints", () => {
    const layout = layoutSkeleton(straightFk(), new Set(), DEFAULT_VIEW);
    expect(layout.dots).toHaveLength(20);
    const joints = new Set(layout.dots.map((d) => d.joint));
    expect(joints.size).toBe(20);
    expect(joints.has("ring.j4_abd_add")).toBe(true);
  });

  it("marks exactly the violating joints", () => {
    const violating = new Set(["index.j3_base", "little.j1_distal"]);
    const layout = layoutSkeleton(straightFk(), violating, DEFAULT_VIEW);
    const flagged = layout.dots.filter((d) => d.violating).map((d) => d.joint);
    expect(new Set(flagged)).toEqual(violating);
  });

  it("abduction shares the base-joint dot", () => {
    expect(JOINT_POINT_INDEX.j4_abd_add).toBe(JOINT_POINT_INDEX.j3_base);
    const layout = layoutSkeleton(straightFk(), new Set(), DEFAULT_VIEW);
    const base = layout.dots.find((d) => d.joint === "index.j3_base")!;
    const abd = layout.dots.find((d) => d.joint === "index.j4_abd_add")!;
    expect([abd.u, abd.v]).toEqual([base.u, base.v]);
  });
});

describe("drawSkeleton", () => {
  it("strokes five polylines and paints violating joints distinctly", () => {
    const violating = new Set(["middle.j2_middle"]);
    const layout = layoutSkeleton(straightFk(), violating, DEFAULT_VIEW);
    const ctx = new RecordingCanvas();
    drawSkeleton(ctx, layout, 520, 520);
    expect(ctx.cleared).toBe(1);
    expect(ctx.strokes).toBe(5);
    const jointDots = ctx.arcs.filter(
      (a) => a.fill === SKELETON_COLORS.joint || a.fill === SKELETON_COLORS.violation,
    );
    expect(jointDots).toHaveLength(20);
    const red = jointDots.filter((a) => a.fill === SKELETON_COLORS.violation);
    expect(red).toHaveLength(1);
    expect(red[0]!.r).toBeGreaterThan(jointDots.find((a) => a.fill === SKELETON_COLORS.joint)!.r);
  });
});
