/** Thin typed client for the gesturehand service.
 *
 * Every computation (interpolation, compilation, forward kinematics) happens
 * on the service side; this module only moves JSON. Service errors carry the
 * {code, message, details} envelope and surface as ApiError; transport
 * failures surface as OfflineError so the app can show its offline banner.
 */
import type {
  CompileResponse,
  FkResponse,
  GestureRecord,
  Pose,
  ScriptDoc,
  ValidationSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: Record<string, unknown> = {},
  ) {
    super(message);
  }
}

export class OfflineError extends Error {
  constructor(public cause_: unknown) {
    super("service unreachable");
  }
}

export interface InterpolateResponse {
  frames: Pose[];
  validation: ValidationSummary;
}

export class ApiClient {
  constructor(public baseUrl: string = "http://127.0.0.1:8000") {}

  private async request<T>(
    path: string,
    init?: RequestInit,
    signal?: AbortSignal,
  ): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, { ...init, signal });
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new OfflineError(err);
    }
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(
        response.status,
        body.code ?? "error",
        body.message ?? response.statusText,
        body.details ?? {},
      );
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(
      path,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      },
      signal,
    );
  }

  async handSpec(): Promise<unknown> {
    return this.request("/api/hand-spec");
  }

  async gestures(category?: string): Promise<GestureRecord[]> {
    const query = category ? `?category=${encodeURIComponent(category)}` : "";
    const body = await this.request<{ gestures: GestureRecord[] }>(
      `/api/gestures${query}`,
    );
    return body.gestures;
  }

  async gesture(id: string): Promise<GestureRecord> {
    return this.request(`/api/gestures/${encodeURIComponent(id)}`);
  }

  async interpolate(
    from: Pose | string,
    to: Pose | string,
    T: number,
    signal?: AbortSignal,
  ): Promise<InterpolateResponse> {
    return this.post("/api/interpolate", { from, to, T }, signal);
  }

  async compile(script: ScriptDoc, signal?: AbortSignal): Promise<CompileResponse> {
    return this.post("/api/compile", { script }, signal);
  }

  async fk(pose: Pose | string, signal?: AbortSignal): Promise<FkResponse> {
    return this.post("/api/fk", { pose }, signal);
  }
}
