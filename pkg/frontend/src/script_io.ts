/** Export/import of the manipulation-script JSON consumed by the CLI.
 *
 * The first key frame carries no interval_frames; every later entry does.
 * Importing reproduces the composer timeline exactly, so export followed by
 * import is the identity on timelines.
 */
import type { ComposerState, TimelineEntry } from "./composer.js";
import type { ScriptDoc } from "./types.js";

export function exportScript(state: ComposerState): ScriptDoc {
  if (state.timeline.length < 2) {
    throw new Error("a script needs at least 2 key frames");
  }
  return {
    name: state.scriptName,
    frame_rate_fps: state.frameRateFps,
    key_frames: state.timeline.map((entry, i) =>
      i === 0
        ? { gesture: entry.gestureId }
        : { gesture: entry.gestureId, interval_frames: entry.intervalFrames },
    ),
  };
}

export interface ImportedScript {
  name: string;
  frameRateFps: number;
  timeline: TimelineEntry[];
}

export function importScript(doc: ScriptDoc): ImportedScript {
  if (!doc || typeof doc !== "object") throw new Error("not a script document");
  if (typeof doc.name !== "string" || !doc.name) throw new Error("script has no name");
  if (!(typeof doc.frame_rate_fps === "number") || doc.frame_rate_fps <= 0) {
    throw new Error("script has no positive frame_rate_fps");
  }
  if (!Array.isArray(doc.key_frames) || doc.key_frames.length < 2) {
    throw new Error("script needs at least 2 key frames");
  }
  const timeline: TimelineEntry[] = doc.key_frames.map((kf, i) => {
    if (kf.pose !== undefined) {
      throw new Error(
        `key frame ${i} is an inline pose; the composer edits gesture-id timelines only`,
      );
    }
    if (typeof kf.gesture !== "string" || !kf.gesture) {
      throw new Error(`key frame ${i} has no gesture id`);
    }
    if (i === 0) {
      return { gestureId: kf.gesture, intervalFrames: 1 };
    }
    if (!Number.isInteger(kf.interval_frames) || kf.interval_frames! < 1) {
      throw new Error(`key frame ${i} needs interval_frames >= 1`);
    }
    return { gestureId: kf.gesture, intervalFrames: kf.interval_frames! };
  });
  return { name: doc.name, frameRateFps: doc.frame_rate_fps, timeline };
}
