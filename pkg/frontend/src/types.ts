/** Wire types shared with the gesturehand HTTP service. All angles in degrees. */

export const DIGITS = ["thumb", "index", "middle", "ring", "little"] as const;
export type DigitKey = (typeof DIGITS)[number];

export const ROLES = ["j1_distal", "j2_middle", "j3_base", "j4_abd_add"] as const;
export type RoleKey = (typeof ROLES)[number];

export type Pose = Record<DigitKey, Record<RoleKey, number>>;

/** "digit.role", e.g. "index.j3_base". */
export type JointKey = string;

export interface GestureRecord {
  id: string;
  name: string;
  category: "FeixGrasp" | "Kapandji" | "TranslationRotation";
  source: string;
  pose: Pose;
  notes?: string;
}

export interface ScriptKeyFrameDoc {
  gesture?: string;
  pose?: Pose;
  interval_frames?: number;
}

export interface ScriptDoc {
  name: string;
  frame_rate_fps: number;
  key_frames: ScriptKeyFrameDoc[];
}

export interface FrameViolation {
  frame: number;
  joint: JointKey;
  angle_deg: number;
  excess_deg: number;
  note: string;
}

export interface ValidationSummary {
  ok: boolean;
  violations: FrameViolation[];
}

export interface CompileValidation extends ValidationSummary {
  max_residual_deg: number;
  max_step_deg: number;
  step_flags: string[];
}

export interface CompileResponse {
  trajectory: {
    frames: Pose[];
    key_frame_indices: number[];
    frame_rate_fps: number;
  };
  metrics: {
    duration_s: number;
    gesture_count: number;
    frame_count: number;
  };
  validation: CompileValidation;
}

export interface FkResponse {
  digits: Record<DigitKey, number[][]>;
  point_labels: string[];
  validation: ValidationSummary;
}

export function jointKey(digit: DigitKey, role: RoleKey): JointKey {
  return `${digit}.${role}`;
}

export function poseAngle(pose: Pose, digit: DigitKey, role: RoleKey): number {
  return pose[digit][role];
}
