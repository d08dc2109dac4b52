/** Composer state and its pure transitions.
 *
 * The timeline always mirrors a valid manipulation script (gesture-id key
 * frames with per-segment intervals); any mutation marks the compiled
 * preview stale so stale frames can never play as current. Mutations push
 * the previous timeline onto an undo stack.
 */
import type { CompileValidation, Pose } from "./types.js";

export const MIN_INTERVAL = 1;
export const DEFAULT_INTERVAL = 10;

export interface TimelineEntry {
  gestureId: string;
  /** Frames to reach this key frame from the previous one; ignored on entry 0. */
  intervalFrames: number;
}

export interface Preview {
  frames: Pose[];
  keyFrameIndices: number[];
  frameRateFps: number;
  validation: CompileValidation;
}

export interface ComposerState {
  scriptName: string;
  frameRateFps: number;
  timeline: TimelineEntry[];
  preview: Preview | null;
  previewStale: boolean;
  cursor: number;
  playing: boolean;
  undoStack: TimelineEntry[][];
}

export function initialState(): ComposerState {
  return {
    scriptName: "untitled",
    frameRateFps: 2.0,
    timeline: [],
    preview: null,
    previewStale: false,
    cursor: 0,
    playing: false,
    undoStack: [],
  };
}

function cloneTimeline(timeline: TimelineEntry[]): TimelineEntry[] {
  return timeline.map((entry) => ({ ...entry }));
}

/** Any timeline change invalidates the preview and stops playback. */
function mutated(state: ComposerState, timeline: TimelineEntry[]): ComposerState {
  return {
    ...state,
    timeline,
    previewStale: state.preview !== null,
    playing: false,
    undoStack: [...state.undoStack, cloneTimeline(state.timeline)],
  };
}

export function canCompile(state: ComposerState): boolean {
  return state.timeline.length >= 2;
}

export function canExport(state: ComposerState): boolean {
  return state.timeline.length >= 2;
}

export function addKeyFrame(
  state: ComposerState,
  gestureId: string,
  intervalFrames: number = DEFAULT_INTERVAL,
): ComposerState {
  const entry = { gestureId, intervalFrames: clampInterval(intervalFrames).value };
  return mutated(state, [...cloneTimeline(state.timeline), entry]);
}

export function removeKeyFrame(state: ComposerState, index: number): ComposerState {
  if (index < 0 || index >= state.timeline.length) return state;
  const timeline = cloneTimeline(state.timeline);
  timeline.splice(index, 1);
  return mutated(state, timeline);
}

export function moveKeyFrame(
  state: ComposerState,
  from: number,
  to: number,
): ComposerState {
  const n = state.timeline.length;
  if (from < 0 || from >= n || to < 0 || to >= n || from === to) return state;
  const timeline = cloneTimeline(state.timeline);
  const [entry] = timeline.splice(from, 1);
  timeline.splice(to, 0, entry!);
  return mutated(state, timeline);
}

export interface ClampResult {
  value: number;
  clamped: boolean;
}

export function clampInterval(raw: number): ClampResult {
  const rounded = Math.round(raw);
  if (!Number.isFinite(rounded) || rounded < MIN_INTERVAL) {
    return { value: MIN_INTERVAL, clamped: true };
  }
  return { value: rounded, clamped: rounded !== raw };
}

export function setInterval_(
  state: ComposerState,
  index: number,
  raw: number,
): { state: ComposerState; clamped: boolean } {
  if (index < 0 || index >= state.timeline.length) return { state, clamped: false };
  const { value, clamped } = clampInterval(raw);
  const timeline = cloneTimeline(state.timeline);
  timeline[index]!.intervalFrames = value;
  return { state: mutated(state, timeline), clamped };
}

export function undo(state: ComposerState): ComposerState {
  if (state.undoStack.length === 0) return state;
  const undoStack = state.undoStack.slice(0, -1);
  const timeline = cloneTimeline(state.undoStack[state.undoStack.length - 1]!);
  return {
    ...state,
    timeline,
    undoStack,
    previewStale: state.preview !== null,
    playing: false,
  };
}

export function setCompiled(state: ComposerState, preview: Preview): ComposerState {
  return { ...state, preview, previewStale: false, cursor: 0 };
}

export function setCursor(state: ComposerState, frame: number): ComposerState {
  if (!state.preview) return state;
  const last = state.preview.frames.length - 1;
  return { ...state, cursor: Math.min(Math.max(frame, 0), last) };
}

export function setPlaying(state: ComposerState, playing: boolean): ComposerState {
  if (playing && (!state.preview || state.previewStale)) return state;
  return { ...state, playing };
}

/** The pose to render at the cursor; null until a fresh compile exists. */
export function currentFrame(state: ComposerState): Pose | null {
  if (!state.preview || state.previewStale) return null;
  return state.preview.frames[state.cursor] ?? null;
}

export function violatingJointsAt(state: ComposerState, frame: number): Set<string> {
  const joints = new Set<string>();
  if (!state.preview) return joints;
  for (const violation of state.preview.validation.violations) {
    if (violation.frame === frame) joints.add(violation.joint);
  }
  return joints;
}
