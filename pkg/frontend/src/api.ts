// Thin fetch client for the assessment service. Base URL is configurable
// so the static bundle can run from any origin.

import {
  ApiError,
  AssessmentReport,
  InkDocument,
  LessonDetail,
  LessonSummary,
  QuizStartResponse,
  QuizSubmitResponse,
  QuizSummaryResponse,
  TemplateStrokes,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly path?: string;

  constructor(status: number, body: ApiError) {
    super(body.error);
    this.status = status;
    this.path = body.path;
  }
}

export class ApiClient {
  readonly baseUrl: string;

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.baseUrl + path, init);
    const text = await resp.text();
    const body = text ? JSON.parse(text) : {};
    if (!resp.ok) {
      throw new ApiRequestError(resp.status, body as ApiError);
    }
    return body as T;
  }

  listLessons(): Promise<{ lessons: LessonSummary[] }> {
    return this.request("/api/lessons");
  }

  lessonDetail(id: string): Promise<LessonDetail> {
    return this.request(`/api/lessons/${encodeURIComponent(id)}`);
  }

  template(label: string): Promise<TemplateStrokes> {
    return this.request(`/api/characters/${encodeURIComponent(label)}/template`);
  }

  assess(ink: InkDocument): Promise<AssessmentReport> {
    return this.request("/api/assess", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(ink),
    });
  }

  startQuiz(lessonId: string): Promise<QuizStartResponse> {
    return this.request("/api/quiz", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ lessonId }),
    });
  }

  submitQuiz(sessionId: string, ink: InkDocument): Promise<QuizSubmitResponse> {
    return this.request(`/api/quiz/${encodeURIComponent(sessionId)}/submit`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(ink),
    });
  }

  quizSummary(sessionId: string): Promise<QuizSummaryResponse> {
    return this.request(`/api/quiz/${encodeURIComponent(sessionId)}/summary`);
  }
}
