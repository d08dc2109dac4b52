import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError, OfflineError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("lists gestures with an optional category filter", async () => {
    const fetchMock = vi.fn().mockImplementation(() =>
      Promise.resolve(jsonResponse({ gestures: [] })),
    );
    vi.stubGlobal("fetch", fetchMock);
    const client = new ApiClient("http://svc");
    await client.gestures();
    await client.gestures("FeixGrasp");
    expect(fetchMock.mock.calls[0]![0]).toBe("http://svc/api/gestures");
    expect(fetchMock.mock.calls[1]![0]).toBe("http://svc/api/gestures?category=FeixGrasp");
  });

  it("posts interpolation requests with the wire field names", async () => {
    const fetchMock = vi
      .fn()
      .mockResolvedValue(jsonResponse({ frames: [], validation: { ok: true, violations: [] } }));
    vi.stubGlobal("fetch", fetchMock);
    await new ApiClient("http://svc").interpolate("palmar_pinch", "tripod", 10);
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("http://svc/api/interpolate");
    expect(JSON.parse(init.body)).toEqual({ from: "palmar_pinch", to: "tripod", T: 10 });
  });

  it("unwraps the error envelope into ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockResolvedValue(
        jsonResponse(
          {
            code: "gesture_not_found",
            message: "unknown gesture id 'nope'",
            details: { suggestions: ["tripod"] },
          },
          404,
        ),
      ),
    );
    const err = await new ApiClient("http://svc").gesture("nope").catch((e) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect(err.status).toBe(404);
    expect(err.code).toBe("gesture_not_found");
    expect(err.details.suggestions).toEqual(["tripod"]);
  });

  it("maps transport failures to OfflineError", async () => {
    vi.stubGlobal("fetch", vi.fn().mockRejectedValue(new TypeError("fetch failed")));
    const err = await new ApiClient("http://svc").gestures().catch((e) => e);
    expect(err).toBeInstanceOf(OfflineError);
  });

  it("propagates aborts so a newer compile can replace an older one", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn().mockImplementation((_url: string, init: RequestInit) => {
        return new Promise((_resolve, reject) => {
          init.signal?.addEventListener("abort", () =>
            reject(new DOMException("aborted", "AbortError")),
          );
        });
      }),
    );
    const client = new ApiClient("http://svc");
    const controller = new AbortController();
    const pending = client.compile(
      { name: "x", frame_rate_fps: 2, key_frames: [] },
      controller.signal,
    );
    controller.abort();
    const err = await pending.catch((e) => e);
    expect(err).toBeInstanceOf(DOMException);
    expect((err as DOMException).name).toBe("AbortError");
  });
});
