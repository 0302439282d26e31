import { afterEach, describe, expect, it, vi } from "vitest";

import { ApiClient, ApiRequestError } from "../src/api.js";
import { metricRows } from "../src/appState.js";
import { CanvasSession } from "../src/inkCapture.js";
import { AssessmentReport } from "../src/types.js";

const SERVER_REPORT: AssessmentReport = {
  label: "一",
  metrics: [
    { id: "stroke_match", raw: 1.0, stars: 3 },
    { id: "stroke_valid", raw: 1.0, stars: 3 },
    { id: "stroke_exist", raw: 1.0, stars: 3 },
    { id: "stroke_order", raw: 1.0, stars: 3 },
    { id: "stroke_direction", raw: 0.0, stars: 1 },
    { id: "stroke_edit", raw: 2, stars: 2 },
    { id: "stroke_length", raw: 0.7, stars: 2 },
    { id: "stroke_closeness", raw: 25.0, stars: 2 },
    { id: "stroke_speed", raw: 1.0, stars: 3 },
    { id: "symbol_speed", raw: 1.0, stars: 3 },
  ],
  overlay: {
    strokes: [{ inputIndex: 0, modelIndex: 0, tags: ["matched", "direction-wrong"] }],
    colorKey: { matched: "green", "direction-wrong": "purple" },
  },
};

function jsonResponse(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

function capturedInk() {
  const session = new CanvasSession(400, 400);
  session.pointerDown({ x: 60, y: 200, time: 100 });
  session.pointerMove({ x: 200, y: 203, time: 130 });
  session.pointerUp({ x: 340, y: 206, time: 160 });
  return { session, ink: session.toInkDocument("一", 400) };
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("assessment round trip", () => {
  it("renders star counts exactly as the server reported them", async () => {
    const fetchMock = vi.fn(async () => jsonResponse(200, SERVER_REPORT));
    vi.stubGlobal("fetch", fetchMock);

    const { ink } = capturedInk();
    const api = new ApiClient("http://service.test");
    const report = await api.assess(ink);
    const rows = metricRows(report);

    expect(rows.map((r) => [r.id, r.stars])).toEqual(
      SERVER_REPORT.metrics.map((m) => [m.id, m.stars]),
    );
    expect(rows.find((r) => r.id === "stroke_direction")!.starIcons).toBe("★☆☆");

    const [url, init] = fetchMock.mock.calls[0] as unknown as [string, RequestInit];
    expect(url).toBe("http://service.test/api/assess");
    expect(JSON.parse(init.body as string)).toEqual(ink);
  });

  it("keeps the ink when the server rejects the submission", async () => {
    vi.stubGlobal("fetch", vi.fn(async () =>
      jsonResponse(400, { error: "metadata.label: missing required field", path: "metadata.label" }),
    ));
    const { session, ink } = capturedInk();
    const api = new ApiClient();
    await expect(api.assess(ink)).rejects.toThrowError(ApiRequestError);
    try {
      await api.assess(ink);
    } catch (err) {
      expect((err as ApiRequestError).status).toBe(400);
      expect((err as ApiRequestError).path).toBe("metadata.label");
    }
    // the canvas session was not touched by the failed submission
    expect(session.strokeCount).toBe(1);
    expect(session.toInkDocument("一", 500).strokes).toEqual(ink.strokes);
  });

  it("drives the quiz endpoints with the session id", async () => {
    const fetchMock = vi.fn(async (url: string) => {
      if (url.endsWith("/api/quiz")) {
        return jsonResponse(201, {
          sessionId: "abc123", lessonId: "L1", state: "in_progress",
          cursor: 0, total: 2, currentLabel: "一",
        });
      }
      if (url.endsWith("/submit")) {
        return jsonResponse(200, {
          report: SERVER_REPORT, cursor: 1, state: "in_progress", nextLabel: "二",
        });
      }
      return jsonResponse(404, { error: "nope" });
    });
    vi.stubGlobal("fetch", fetchMock);

    const api = new ApiClient();
    const start = await api.startQuiz("L1");
    expect(start.currentLabel).toBe("一");
    const { ink } = capturedInk();
    const submitted = await api.submitQuiz(start.sessionId, ink);
    expect(submitted.cursor).toBe(1);
    expect(fetchMock.mock.calls[1][0]).toBe("/api/quiz/abc123/submit");
  });
});
