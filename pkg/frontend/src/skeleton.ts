/** 2.5D skeleton rendering of the per-digit FK polylines.
 *
 * The service returns each digit in its own base frame: x along the straight
 * digit, y the abduction direction, z the palm normal (flexion curls toward
 * -z). The palm layout is a fixed, documented convention of this view: each
 * digit is yawed in the palm plane and offset sideways, then the whole hand
 * is tilted about the screen-horizontal axis so flexion is visible, and
 * orthographically projected (fingers up, +y to the right).
 */
import type { DigitKey, FkResponse, JointKey, RoleKey } from "./types.js";
import { DIGITS, jointKey } from "./types.js";

export interface DigitPlacement {
  /** Sideways offset of the digit base in the palm plane, mm. */
  offsetY: number;
  /** Offset along the digit axis, mm (metacarpal stagger). */
  offsetX: number;
  /** Fixed yaw of the whole digit in the palm plane, degrees. */
  yawDeg: number;
}

/** Fixed palm layout (mm / degrees); purely a rendering convention. */
export const DIGIT_PLACEMENTS: Record<DigitKey, DigitPlacement> = {
  thumb: { offsetY: -48, offsetX: -30, yawDeg: -50 },
  index: { offsetY: -24, offsetX: 0, yawDeg: -4 },
  middle: { offsetY: 0, offsetX: 4, yawDeg: 0 },
  ring: { offsetY: 22, offsetX: 0, yawDeg: 3 },
  little: { offsetY: 43, offsetX: -10, yawDeg: 6 },
};

export interface ViewParams {
  /** Tilt about the screen-horizontal axis, degrees; 0 = flat palm view. */
  tiltDeg: number;
  scale: number;
  originU: number;
  originV: number;
}

export const DEFAULT_VIEW: ViewParams = {
  tiltDeg: 28,
  scale: 2.2,
  originU: 260,
  originV: 420,
};

export type Vec3 = [number, number, number];

/** Digit-local FK point -> hand-frame point under the fixed palm layout. */
export function placeDigitPoint(point: Vec3, digit: DigitKey): Vec3 {
  const { offsetY, offsetX, yawDeg } = DIGIT_PLACEMENTS[digit];
  const yaw = (yawDeg * Math.PI) / 180;
  const [x, y, z] = point;
  const xr = x * Math.cos(yaw) - y * Math.sin(yaw);
  const yr = x * Math.sin(yaw) + y * Math.cos(yaw);
  return [xr + offsetX, yr + offsetY, z];
}

/** Orthographic projection to canvas coordinates (u right, v down). */
export function projectPoint(point: Vec3, view: ViewParams): [number, number] {
  const tilt = (view.tiltDeg * Math.PI) / 180;
  const [x, y, z] = point;
  const depthAxis = x * Math.cos(tilt) + z * Math.sin(tilt);
  return [view.originU + view.scale * y, view.originV - view.scale * depthAxis];
}

/** FK rows are [base, j3, j2, j1, fingertip]; map each joint to its dot. */
export const JOINT_POINT_INDEX: Record<RoleKey, number> = {
  j3_base: 1,
  j2_middle: 2,
  j1_distal: 3,
  j4_abd_add: 1,
};

export interface JointDot {
  joint: JointKey;
  u: number;
  v: number;
  violating: boolean;
}

export interface SkeletonLayout {
  /** One projected polyline per digit, in canvas coordinates. */
  polylines: Record<DigitKey, [number, number][]>;
  /** One dot per joint (20 total); abduction shares the base-joint dot. */
  dots: JointDot[];
}

export function layoutSkeleton(
  fk: FkResponse,
  violating: Set<JointKey>,
  view: ViewParams = DEFAULT_VIEW,
): SkeletonLayout {
  const polylines = {} as Record<DigitKey, [number, number][]>;
  const dots: JointDot[] = [];
  for (const digit of DIGITS) {
    const rows = fk.digits[digit];
    const projected = rows.map((row) =>
      projectPoint(placeDigitPoint([row[0]!, row[1]!, row[2]!], digit), view),
    );
    polylines[digit] = projected;
    for (const role of Object.keys(JOINT_POINT_INDEX) as RoleKey[]) {
      const key = jointKey(digit, role);
      const [u, v] = projected[JOINT_POINT_INDEX[role]]!;
      dots.push({ joint: key, u, v, violating: violating.has(key) });
    }
  }
  return { polylines, dots };
}

/** The subset of CanvasRenderingContext2D the renderer needs (stubbed in tests). */
export interface SkeletonCanvas {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  stroke(): void;
  fill(): void;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  fillStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
}

export const SKELETON_COLORS = {
  bone: "#8fb4d9",
  joint: "#2a6fb0",
  violation: "#e03131",
  tip: "#444",
};

export function drawSkeleton(
  ctx: SkeletonCanvas,
  layout: SkeletonLayout,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.lineWidth = 5;
  ctx.strokeStyle = SKELETON_COLORS.bone;
  for (const digit of DIGITS) {
    const line = layout.polylines[digit];
    ctx.beginPath();
    ctx.moveTo(line[0]![0], line[0]![1]);
    for (const [u, v] of line.slice(1)) ctx.lineTo(u, v);
    ctx.stroke();
    const tip = line[line.length - 1]!;
    ctx.fillStyle = SKELETON_COLORS.tip;
    ctx.beginPath();
    ctx.arc(tip[0], tip[1], 2.5, 0, 2 * Math.PI);
    ctx.fill();
  }
  for (const dot of layout.dots) {
    ctx.fillStyle = dot.violating ? SKELETON_COLORS.violation : SKELETON_COLORS.joint;
    ctx.beginPath();
    ctx.arc(dot.u, dot.v, dot.violating ? 6 : 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}
