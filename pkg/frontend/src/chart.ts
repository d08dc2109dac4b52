/** Joint displacement chart: one piecewise-linear series per joint over the
 * compiled frames, key-frame breakpoints marked, plus the playback cursor.
 */
import type { JointKey, Pose } from "./types.js";
import { DIGITS, ROLES, jointKey } from "./types.js";
import type { SkeletonCanvas } from "./skeleton.js";

export interface ChartCanvas extends SkeletonCanvas {
  setLineDash?(segments: number[]): void;
}

export interface JointSeries {
  joint: JointKey;
  values: number[];
}

export function jointSeries(frames: Pose[]): JointSeries[] {
  const series: JointSeries[] = [];
  for (const digit of DIGITS) {
    for (const role of ROLES) {
      series.push({
        joint: jointKey(digit, role),
        values: frames.map((frame) => frame[digit][role]),
      });
    }
  }
  return series;
}

export function valueRange(series: JointSeries[]): [number, number] {
  let lo = 0;
  let hi = 0;
  for (const s of series) {
    for (const v of s.values) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  if (hi === lo) hi = lo + 1;
  return [lo, hi];
}

const SERIES_COLORS = [
  "#c92a2a", "#e8590c", "#e67700", "#2b8a3e", "#0b7285",
  "#1971c2", "#6741d9", "#c2255c", "#5f3dc4", "#087f5b",
  "#a61e4d", "#364fc7", "#99541e", "#2f9e44", "#3b5bdb",
  "#9c36b5", "#0c8599", "#66a80f", "#f08c00", "#845ef7",
];

export function drawChart(
  ctx: ChartCanvas,
  frames: Pose[],
  keyFrameIndices: number[],
  cursor: number,
  width: number,
  height: number,
): void {
  ctx.clearRect(0, 0, width, height);
  if (frames.length < 2) return;
  const series = jointSeries(frames);
  const [lo, hi] = valueRange(series);
  const px = (frame: number) => (frame / (frames.length - 1)) * (width - 20) + 10;
  const py = (value: number) => height - 14 - ((value - lo) / (hi - lo)) * (height - 28);

  // key-frame breakpoints
  ctx.lineWidth = 1;
  ctx.strokeStyle = "#bbb";
  for (const idx of keyFrameIndices) {
    ctx.beginPath();
    ctx.moveTo(px(idx), 4);
    ctx.lineTo(px(idx), height - 4);
    ctx.stroke();
  }

  ctx.lineWidth = 1.5;
  series.forEach((s, i) => {
    ctx.strokeStyle = SERIES_COLORS[i % SERIES_COLORS.length]!;
    ctx.beginPath();
    ctx.moveTo(px(0), py(s.values[0]!));
    for (let f = 1; f < s.values.length; f++) {
      ctx.lineTo(px(f), py(s.values[f]!));
    }
    ctx.stroke();
  });

  // playback cursor
  ctx.lineWidth = 2;
  ctx.strokeStyle = "#222";
  ctx.beginPath();
  ctx.moveTo(px(cursor), 0);
  ctx.lineTo(px(cursor), height);
  ctx.stroke();
}
