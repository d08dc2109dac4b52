/** Key-frame composer application.
 *
 * Left: the gesture palette (grouped by category). Middle: the timeline
 * being composed plus script controls. Right: the skeleton preview with
 * playback and the joint displacement chart. All frames shown here come
 * from the service's /api/compile and /api/fk endpoints; the UI performs
 * no kinematics of its own.
 */
import { ApiClient, ApiError, OfflineError } from "./api.js";
import {
  ComposerState,
  addKeyFrame,
  canCompile,
  canExport,
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
} from "./composer.js";
import { drawChart } from "./chart.js";
import { exportScript, importScript } from "./script_io.js";
import { DEFAULT_VIEW, drawSkeleton, layoutSkeleton } from "./skeleton.js";
import type { FkResponse, GestureRecord, Pose } from "./types.js";

const CATEGORY_LABELS: Record<GestureRecord["category"], string> = {
  FeixGrasp: "Feix grasps",
  Kapandji: "Kapandji positions",
  TranslationRotation: "Translation / rotation",
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export class App {
  state: ComposerState = initialState();
  api: ApiClient;
  gestures: GestureRecord[] = [];
  selectedGesture: GestureRecord | null = null;
  private compileController: AbortController | null = null;
  private fkCache = new Map<string, FkResponse>();
  private playTimer: number | null = null;

  constructor(baseUrl?: string) {
    this.api = new ApiClient(baseUrl ?? inferBaseUrl());
  }

  async start(): Promise<void> {
    el<HTMLButtonElement>("retry").addEventListener("click", () => void this.loadPalette());
    el<HTMLButtonElement>("compile").addEventListener("click", () => void this.compile());
    el<HTMLButtonElement>("undo").addEventListener("click", () => {
      this.setState(undo(this.state));
    });
    el<HTMLButtonElement>("export").addEventListener("click", () => this.export());
    el<HTMLInputElement>("import").addEventListener("change", (e) => void this.import(e));
    el<HTMLInputElement>("script-name").addEventListener("change", (e) => {
      this.state = { ...this.state, scriptName: (e.target as HTMLInputElement).value || "untitled" };
    });
    el<HTMLInputElement>("frame-rate").addEventListener("change", (e) => {
      const fps = Number((e.target as HTMLInputElement).value);
      if (fps > 0) this.setState({ ...this.state, frameRateFps: fps, previewStale: this.state.preview !== null });
    });
    el<HTMLInputElement>("scrub").addEventListener("input", (e) => {
      const frame = Number((e.target as HTMLInputElement).value);
      this.setState(setCursor(setPlaying(this.state, false), frame));
    });
    el<HTMLButtonElement>("play").addEventListener("click", () => this.togglePlay());
    await this.loadPalette();
  }

  private setState(next: ComposerState): void {
    const wasPlaying = this.state.playing;
    this.state = next;
    if (wasPlaying !== next.playing) this.syncPlayTimer();
    this.render();
  }

  // ----- palette -------------------------------------------------------

  async loadPalette(): Promise<void> {
    try {
      this.gestures = await this.api.gestures();
      el("offline-banner").hidden = true;
    } catch (err) {
      if (err instanceof OfflineError) {
        el("offline-banner").hidden = false;
        return;
      }
      throw err;
    }
    this.renderPalette();
    this.render();
  }

  private renderPalette(): void {
    const palette = el("palette");
    palette.replaceChildren();
    for (const category of Object.keys(CATEGORY_LABELS) as GestureRecord["category"][]) {
      const records = this.gestures.filter((g) => g.category === category);
      const header = document.createElement("h3");
      header.textContent = `${CATEGORY_LABELS[category]} (${records.length})`;
      palette.appendChild(header);
      const group = document.createElement("div");
      group.className = "palette-group";
      for (const record of records) {
        const button = document.createElement("button");
        button.className = "gesture";
        button.textContent = record.name;
        button.title = record.id;
        button.addEventListener("click", () => void this.inspectGesture(record));
        group.appendChild(button);
      }
      palette.appendChild(group);
    }
  }

  async inspectGesture(record: GestureRecord): Promise<void> {
    this.selectedGesture = record;
    el("inspect-name").textContent = `${record.name} (${record.id})`;
    el<HTMLButtonElement>("add-key-frame").hidden = false;
    const addButton = el<HTMLButtonElement>("add-key-frame");
    const fresh = addButton.cloneNode(true) as HTMLButtonElement;
    addButton.replaceWith(fresh);
    fresh.addEventListener("click", () => {
      this.setState(addKeyFrame(this.state, record.id));
    });
    await this.showPose(record.pose, new Set());
  }

  // ----- skeleton + chart ----------------------------------------------

  private async showPose(pose: Pose | string, violating: Set<string>): Promise<void> {
    const key = typeof pose === "string" ? pose : JSON.stringify(pose);
    let fk = this.fkCache.get(key);
    if (!fk) {
      try {
        fk = await this.api.fk(pose);
      } catch (err) {
        if (err instanceof OfflineError) {
          el("offline-banner").hidden = false;
          return;
        }
        throw err;
      }
      this.fkCache.set(key, fk);
    }
    for (const violation of fk.validation.violations) violating.add(violation.joint);
    const canvas = el<HTMLCanvasElement>("skeleton");
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    drawSkeleton(ctx, layoutSkeleton(fk, violating, DEFAULT_VIEW), canvas.width, canvas.height);
  }

  // ----- compile / playback --------------------------------------------

  async compile(): Promise<void> {
    if (!canCompile(this.state)) return;
    this.compileController?.abort();
    const controller = new AbortController();
    this.compileController = controller;
    const script = exportScript(this.state);
    let response;
    try {
      response = await this.api.compile(script, controller.signal);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") return;
      if (err instanceof OfflineError) {
        el("offline-banner").hidden = false;
        return;
      }
      if (err instanceof ApiError) {
        el("compile-status").textContent = `compile failed: ${err.message}`;
        return;
      }
      throw err;
    }
    this.fkCache.clear();
    this.setState(
      setCompiled(this.state, {
        frames: response.trajectory.frames,
        keyFrameIndices: response.trajectory.key_frame_indices,
        frameRateFps: response.trajectory.frame_rate_fps,
        validation: response.validation,
      }),
    );
  }

  private togglePlay(): void {
    if (this.state.previewStale || !this.state.preview) {
      el("compile-status").textContent = "timeline changed: compile to refresh the preview";
      return;
    }
    this.setState(setPlaying(this.state, !this.state.playing));
  }

  private syncPlayTimer(): void {
    if (this.playTimer !== null) {
      window.clearInterval(this.playTimer);
      this.playTimer = null;
    }
    if (!this.state.playing || !this.state.preview) return;
    // playback advances at the script's own frame rate
    const period = 1000 / this.state.preview.frameRateFps;
    this.playTimer = window.setInterval(() => {
      const last = this.state.preview!.frames.length - 1;
      if (this.state.cursor >= last) {
        this.setState(setPlaying(this.state, false));
        return;
      }
      this.setState(setCursor(this.state, this.state.cursor + 1));
    }, period);
  }

  // ----- export / import -----------------------------------------------

  private export(): void {
    if (!canExport(this.state)) return;
    const doc = exportScript(this.state);
    const blob = new Blob([JSON.stringify(doc, null, 2) + "\n"], {
      type: "application/json",
    });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = `${doc.name}.json`;
    link.click();
    URL.revokeObjectURL(link.href);
  }

  private async import(event: Event): Promise<void> {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      const imported = importScript(JSON.parse(await file.text()));
      this.setState({
        ...initialState(),
        scriptName: imported.name,
        frameRateFps: imported.frameRateFps,
        timeline: imported.timeline,
      });
      el<HTMLInputElement>("script-name").value = imported.name;
      el<HTMLInputElement>("frame-rate").value = String(imported.frameRateFps);
    } catch (err) {
      el("compile-status").textContent = `import failed: ${(err as Error).message}`;
    } finally {
      input.value = "";
    }
  }

  // ----- rendering -------------------------------------------------------

  render(): void {
    this.renderTimeline();
    this.renderPreview();
  }

  private renderTimeline(): void {
    const list = el("timeline");
    list.replaceChildren();
    this.state.timeline.forEach((entry, i) => {
      const item = document.createElement("li");
      const record = this.gestures.find((g) => g.id === entry.gestureId);
      const label = document.createElement("span");
      label.textContent = `${i + 1}. ${record?.name ?? entry.gestureId}`;
      item.appendChild(label);

      if (i > 0) {
        const interval = document.createElement("input");
        interval.type = "number";
        interval.min = "1";
        interval.value = String(entry.intervalFrames);
        interval.title = "frames to reach this key frame";
        interval.addEventListener("change", () => {
          const { state, clamped } = setInterval_(this.state, i, Number(interval.value));
          if (clamped) el("compile-status").textContent = "interval clamped to 1 frame minimum";
          this.setState(state);
        });
        item.appendChild(interval);
      }

      for (const [text, target] of [["↑", i - 1], ["↓", i + 1]] as const) {
        const move = document.createElement("button");
        move.textContent = text;
        move.disabled = target < 0 || target >= this.state.timeline.length;
        move.addEventListener("click", () => this.setState(moveKeyFrame(this.state, i, target)));
        item.appendChild(move);
      }
      const remove = document.createElement("button");
      remove.textContent = "×";
      remove.addEventListener("click", () => this.setState(removeKeyFrame(this.state, i)));
      item.appendChild(remove);
      list.appendChild(item);
    });

    const compileButton = el<HTMLButtonElement>("compile");
    compileButton.disabled = !canCompile(this.state);
    el<HTMLButtonElement>("export").disabled = !canExport(this.state);
    el<HTMLButtonElement>("undo").disabled = this.state.undoStack.length === 0;
    el("timeline-hint").textContent = canCompile(this.state)
      ? ""
      : "add at least 2 key frames to compile";
    el("stale-banner").hidden = !this.state.previewStale;
  }

  private renderPreview(): void {
    const preview = this.state.preview;
    const scrub = el<HTMLInputElement>("scrub");
    const playButton = el<HTMLButtonElement>("play");
    const usable = preview !== null && !this.state.previewStale;
    scrub.disabled = !usable;
    playButton.disabled = !usable;
    playButton.textContent = this.state.playing ? "pause" : "play";
    if (!preview) return;

    scrub.max = String(preview.frames.length - 1);
    scrub.value = String(this.state.cursor);
    const seconds = this.state.cursor / preview.frameRateFps;
    el("frame-info").textContent =
      `frame ${this.state.cursor}/${preview.frames.length - 1}` +
      ` (${seconds.toFixed(1)} s at ${preview.frameRateFps} fps)`;

    const violations = violatingJointsAt(this.state, this.state.cursor);
    el("violations").textContent = preview.validation.ok
      ? "trajectory is ROM-clean and on the coupling manifold"
      : preview.validation.violations
          .filter((v) => v.frame === this.state.cursor)
          .map((v) => `${v.joint}: ${v.angle_deg.toFixed(1)} deg (${v.note})`)
          .join("; ") || `trajectory has ${preview.validation.violations.length} flagged frame(s)`;

    const pose = currentFrame(this.state);
    if (pose) void this.showPose(pose, violations);

    const chartCanvas = el<HTMLCanvasElement>("chart");
    const ctx = chartCanvas.getContext("2d");
    if (ctx) {
      drawChart(
        ctx,
        preview.frames,
        preview.keyFrameIndices,
        this.state.cursor,
        chartCanvas.width,
        chartCanvas.height,
      );
    }
  }
}

function inferBaseUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? "http://127.0.0.1:8000";
}

if (typeof document !== "undefined" && document.getElementById("palette")) {
  const app = new App();
  void app.start();
}
