// Application wiring: one canvas session, one study session, one in-flight
// request at a time.

import { ApiClient, ApiRequestError } from "./api.js";
import { CanvasSession } from "./inkCapture.js";
import { StudySession, Mode, metricRows, overlayForMetric } from "./appState.js";
import {
  CanvasRenderer,
  renderCharacterInfo,
  renderColorKey,
  renderMetricRows,
  renderQuizSummary,
} from "./render.js";
import { AssessmentReport, LessonDetail, TemplateStrokes } from "./types.js";

const api = new ApiClient((window as { KWB_API_BASE?: string }).KWB_API_BASE ?? "");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

class App {
  private canvasEl = el<HTMLCanvasElement>("writing-canvas");
  private renderer = new CanvasRenderer(this.canvasEl);
  private capture = new CanvasSession(this.canvasEl.width, this.canvasEl.height);

  private study: StudySession | null = null;
  private lesson: LessonDetail | null = null;
  private template: TemplateStrokes | null = null;
  private report: AssessmentReport | null = null;
  private quizSessionId: string | null = null;
  private pending = false;
  private stepsCursor = -1;

  async init(): Promise<void> {
    const { lessons } = await api.listLessons();
    const select = el<HTMLSelectElement>("lesson-select");
    for (const lesson of lessons) {
      const opt = document.createElement("option");
      opt.value = lesson.id;
      opt.textContent = `${lesson.id} — ${lesson.title}`;
      select.append(opt);
    }
    el<HTMLButtonElement>("start-practice").addEventListener("click", () => this.start("practice"));
    el<HTMLButtonElement>("start-quiz").addEventListener("click", () => this.start("quiz"));
    el<HTMLButtonElement>("btn-back").addEventListener("click", () => this.navigate(-1));
    el<HTMLButtonElement>("btn-next").addEventListener("click", () => this.navigate(1));
    el<HTMLButtonElement>("btn-undo").addEventListener("click", () => this.edit("undo"));
    el<HTMLButtonElement>("btn-clear").addEventListener("click", () => this.edit("clear"));
    el<HTMLButtonElement>("btn-assess").addEventListener("click", () => void this.assess());
    el<HTMLButtonElement>("btn-demo").addEventListener("click", () => this.playDemo());
    el<HTMLButtonElement>("btn-steps").addEventListener("click", () => this.playSteps());
    el<HTMLButtonElement>("btn-continue").addEventListener("click", () => {
      el<HTMLButtonElement>("btn-continue").hidden = true;
      void this.showCurrent();
    });
    this.bindPointerEvents();
    this.refreshButtons();
  }

  private bindPointerEvents(): void {
    const canvas = this.canvasEl;
    const pos = (ev: PointerEvent) => {
      const rect = canvas.getBoundingClientRect();
      return {
        x: ((ev.clientX - rect.left) / rect.width) * canvas.width,
        y: ((ev.clientY - rect.top) / rect.height) * canvas.height,
        time: ev.timeStamp,
      };
    };
    canvas.addEventListener("pointerdown", (ev) => {
      if (!this.study || this.pending) return;
      canvas.setPointerCapture(ev.pointerId);
      this.capture.pointerDown(pos(ev));
      this.redraw();
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (!this.capture.isDrawing) return;
      this.capture.pointerMove(pos(ev));
      this.redraw();
    });
    canvas.addEventListener("pointerup", (ev) => {
      if (!this.capture.isDrawing) return;
      this.capture.pointerUp(pos(ev));
      this.redraw();
      this.refreshButtons();
    });
  }

  private async start(mode: Mode): Promise<void> {
    const lessonId = el<HTMLSelectElement>("lesson-select").value;
    if (!lessonId) return;
    this.lesson = await api.lessonDetail(lessonId);
    const labels = this.lesson.characters.map((c) => c.label);
    if (mode === "quiz") {
      const session = await api.startQuiz(lessonId);
      this.quizSessionId = session.sessionId;
    } else {
      this.quizSessionId = null;
    }
    this.study = new StudySession(mode, lessonId, labels);
    el("summary-panel").hidden = true;
    await this.showCurrent();
  }

  private async showCurrent(): Promise<void> {
    if (!this.study) return;
    const view = this.study.view();
    this.report = null;
    this.stepsCursor = -1;
    this.capture.reset();
    this.renderer.stopAnimation();
    el("error-box").textContent = "";
    el("assessment-panel").hidden = true;

    if (view.finished) {
      await this.showSummary();
      return;
    }
    this.template = await api.template(view.label!);
    this.renderer.fitTemplate(this.template.size);
    this.redraw();

    el("progress").textContent = `${view.position + 1} / ${view.total}`;
    const info = el("info-panel");
    info.hidden = !view.infoPanelVisible;
    if (view.infoPanelVisible && this.lesson) {
      renderCharacterInfo(info, this.lesson.characters[view.position]);
    }
    this.refreshButtons();
  }

  private refreshButtons(): void {
    const view = this.study?.view();
    const back = el<HTMLButtonElement>("btn-back");
    const next = el<HTMLButtonElement>("btn-next");
    back.hidden = !(view?.backVisible ?? false);
    back.disabled = this.pending || !(view?.backEnabled ?? false);
    next.hidden = !(view?.nextVisible ?? true);
    next.disabled = this.pending || !view || view.finished || view.mode === "quiz";
    el<HTMLButtonElement>("btn-assess").disabled =
      this.pending || !view || view.finished || this.capture.isEmpty;
    el<HTMLButtonElement>("btn-undo").disabled = this.pending || this.capture.isEmpty;
    el<HTMLButtonElement>("btn-clear").disabled = this.pending || this.capture.isEmpty;
    el<HTMLButtonElement>("btn-demo").disabled = this.pending || !this.template;
    el<HTMLButtonElement>("btn-steps").disabled = this.pending || !this.template;
  }

  private redraw(): void {
    this.renderer.drawScene(
      this.capture.currentStrokes(),
      this.template ? this.template.strokes : null,
    );
  }

  private navigate(direction: number): void {
    if (!this.study) return;
    const moved = direction < 0 ? this.study.back() : this.study.next();
    if (moved) void this.showCurrent();
  }

  private edit(kind: "undo" | "clear"): void {
    if (kind === "undo") this.capture.undo(performance.now());
    else this.capture.clear(performance.now());
    this.redraw();
    this.refreshButtons();
  }

  private async assess(): Promise<void> {
    if (!this.study || this.capture.isEmpty || this.pending) return;
    const view = this.study.view();
    const ink = this.capture.toInkDocument(view.label!, performance.now());
    this.pending = true;
    this.refreshButtons();
    try {
      if (this.study.mode === "quiz" && this.quizSessionId) {
        const result = await api.submitQuiz(this.quizSessionId, ink);
        this.showReport(result.report);
        this.study.advanceAfterSubmit(result.cursor, result.state);
        el<HTMLButtonElement>("btn-continue").hidden = false;
      } else {
        this.showReport(await api.assess(ink));
      }
    } catch (err) {
      // ink stays on the canvas so the student can fix and resubmit
      const message = err instanceof ApiRequestError
        ? `${err.message}${err.path ? ` (${err.path})` : ""}`
        : String(err);
      el("error-box").textContent = message;
    } finally {
      this.pending = false;
      this.refreshButtons();
    }
  }

  private showReport(report: AssessmentReport): void {
    this.report = report;
    const panel = el("assessment-panel");
    panel.hidden = false;
    renderMetricRows(el("metric-rows"), metricRows(report), (metricId) => this.playOverlay(metricId));
    renderColorKey(el("color-key"), []);
  }

  private playOverlay(metricId: string): void {
    if (!this.report || !this.template) return;
    const overlay = overlayForMetric(this.report, metricId);
    this.renderer.stopAnimation();
    this.renderer.drawColored(
      this.capture.currentStrokes(),
      this.template.strokes,
      overlay,
      this.template.strokes,
    );
    renderColorKey(el("color-key"), overlay.legend);
  }

  private playDemo(): void {
    if (!this.template) return;
    this.renderer.animateStrokes(this.template.strokes, { fromTemplateFrame: true }, () => this.redraw());
  }

  private playSteps(): void {
    if (!this.template) return;
    this.stepsCursor = (this.stepsCursor + 1) % this.template.strokeCount;
    this.renderer.animateStrokes(this.template.strokes, {
      fromTemplateFrame: true,
      upToStroke: this.stepsCursor,
    });
    el("btn-steps").textContent =
      this.stepsCursor + 1 < this.template.strokeCount ? `Next (${this.stepsCursor + 1})` : "Steps";
  }

  private async showSummary(): Promise<void> {
    if (!this.quizSessionId) return;
    const summary = await api.quizSummary(this.quizSessionId);
    const panel = el("summary-panel");
    panel.hidden = false;
    renderQuizSummary(panel, summary);
    el("assessment-panel").hidden = true;
    el("info-panel").hidden = true;
  }
}

declare global {
  interface Window {
    KWB_API_BASE?: string;
  }
}

window.addEventListener("DOMContentLoaded", () => {
  void new App().init();
});
