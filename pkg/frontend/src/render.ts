// Canvas drawing and DOM construction. Everything rendered here is driven
// by server payloads; this layer holds no scoring rules.

import { MetricRow, OverlayRender } from "./appState.js";
import { CharacterInfo, InkStroke, QuizSummaryResponse } from "./types.js";

export interface CanvasTheme {
  ink: string;
  trace: string;
  background: string;
}

export const THEME: CanvasTheme = {
  ink: "#1a1a1a",
  trace: "rgba(120, 140, 170, 0.35)",
  background: "#ffffff",
};

function strokePath(ctx: CanvasRenderingContext2D, stroke: InkStroke, upTo?: number) {
  const pts = upTo === undefined ? stroke.points : stroke.points.slice(0, upTo);
  if (pts.length === 0) return;
  ctx.beginPath();
  ctx.moveTo(pts[0].x, pts[0].y);
  for (const p of pts.slice(1)) ctx.lineTo(p.x, p.y);
  if (pts.length === 1) ctx.lineTo(pts[0].x + 0.1, pts[0].y + 0.1); // visible dot
  ctx.stroke();
}

export class CanvasRenderer {
  private ctx: CanvasRenderingContext2D;
  private canvas: HTMLCanvasElement;
  private animation: number | null = null;

  // scale template strokes (normalized 250px frame) into the canvas
  templateScale = 1.0;
  templateOffset = { x: 0, y: 0 };

  constructor(canvas: HTMLCanvasElement) {
    this.canvas = canvas;
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
  }

  fitTemplate(size: number): void {
    const margin = 40;
    this.templateScale = (this.canvas.width - 2 * margin) / size;
    this.templateOffset = { x: margin, y: margin };
  }

  private templateToCanvas(stroke: InkStroke): InkStroke {
    return {
      points: stroke.points.map((p) => ({
        x: p.x * this.templateScale + this.templateOffset.x,
        y: p.y * this.templateScale + this.templateOffset.y,
        t: p.t,
      })),
    };
  }

  stopAnimation(): void {
    if (this.animation !== null) {
      cancelAnimationFrame(this.animation);
      this.animation = null;
    }
  }

  clear(): void {
    this.ctx.fillStyle = THEME.background;
    this.ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
  }

  drawScene(userStrokes: InkStroke[], trace: InkStroke[] | null): void {
    this.clear();
    this.ctx.lineWidth = 6;
    this.ctx.lineCap = "round";
    this.ctx.lineJoin = "round";
    if (trace) {
      this.ctx.strokeStyle = THEME.trace;
      for (const st of trace) strokePath(this.ctx, this.templateToCanvas(st));
    }
    this.ctx.strokeStyle = THEME.ink;
    for (const st of userStrokes) strokePath(this.ctx, st);
  }

  drawColored(
    userStrokes: InkStroke[],
    trace: InkStroke[] | null,
    overlay: OverlayRender,
    modelStrokes: InkStroke[],
  ): void {
    this.drawScene([], trace);
    this.ctx.lineWidth = 6;
    for (const s of overlay.strokes) {
      this.ctx.strokeStyle = s.color;
      if (s.inputIndex !== null && userStrokes[s.inputIndex]) {
        strokePath(this.ctx, userStrokes[s.inputIndex]);
      } else if (s.modelIndex !== null && modelStrokes[s.modelIndex]) {
        strokePath(this.ctx, this.templateToCanvas(modelStrokes[s.modelIndex]));
      }
    }
  }

  // Replays strokes using their own timing; `upToStroke` limits Steps mode.
  animateStrokes(
    strokes: InkStroke[],
    options: { fromTemplateFrame?: boolean; upToStroke?: number; background?: InkStroke[] },
    onDone?: () => void,
  ): void {
    this.stopAnimation();
    const visible = options.upToStroke === undefined ? strokes : strokes.slice(0, options.upToStroke + 1);
    if (visible.length === 0) return;
    const mapped = options.fromTemplateFrame
      ? visible.map((st) => this.templateToCanvas(st))
      : visible;
    const t0 = mapped[0].points[0].t;
    const span = Math.max(1, mapped[mapped.length - 1].points[mapped[mapped.length - 1].points.length - 1].t - t0);
    const started = performance.now();

    const frame = () => {
      const elapsed = performance.now() - started;
      const cutoff = t0 + Math.min(elapsed, span);
      this.drawScene(options.background ?? [], null);
      this.ctx.lineWidth = 6;
      this.ctx.strokeStyle = THEME.ink;
      for (const st of mapped) {
        const count = st.points.filter((p) => p.t <= cutoff).length;
        if (count > 0) strokePath(this.ctx, st, Math.max(count, 1));
      }
      if (elapsed < span) {
        this.animation = requestAnimationFrame(frame);
      } else {
        this.animation = null;
        if (onDone) onDone();
      }
    };
    this.animation = requestAnimationFrame(frame);
  }
}

// --- DOM builders ---------------------------------------------------------

export function renderMetricRows(
  container: HTMLElement,
  rows: MetricRow[],
  onPlay: (metricId: string) => void,
): void {
  container.innerHTML = "";
  for (const row of rows) {
    const div = document.createElement("div");
    div.className = "metric-row";
    const name = document.createElement("span");
    name.className = "metric-name";
    name.textContent = row.label;
    const stars = document.createElement("span");
    stars.className = "metric-stars";
    stars.textContent = row.starIcons;
    stars.dataset.metric = row.id;
    stars.dataset.stars = String(row.stars);
    div.append(name, stars);
    if (row.hasAnimation) {
      const btn = document.createElement("button");
      btn.textContent = "Play";
      btn.className = "play-button";
      btn.addEventListener("click", () => onPlay(row.id));
      div.append(btn);
    }
    container.append(div);
  }
}

export function renderColorKey(container: HTMLElement, legend: { tag: string; color: string }[]): void {
  container.innerHTML = "";
  container.hidden = legend.length === 0;
  for (const entry of legend) {
    const item = document.createElement("span");
    item.className = "color-key-entry";
    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.backgroundColor = entry.color;
    const label = document.createElement("span");
    label.textContent = entry.tag;
    item.append(swatch, label);
    container.append(item);
  }
}

export function renderCharacterInfo(container: HTMLElement, info: CharacterInfo): void {
  container.innerHTML = "";
  const big = document.createElement("div");
  big.className = "char-display";
  big.textContent = info.label;
  const pron = document.createElement("p");
  pron.textContent = info.pronunciations.join("、");
  const trans = document.createElement("p");
  trans.textContent = info.translations.join(", ");
  const vocab = document.createElement("ul");
  for (const v of info.vocabulary) {
    const li = document.createElement("li");
    li.textContent = `${v.word} (${v.pronunciation}) — ${v.translation}`;
    if (v.highlighted) li.className = "highlighted";
    vocab.append(li);
  }
  container.append(big, pron, trans, vocab);
}

export function renderQuizSummary(container: HTMLElement, summary: QuizSummaryResponse): void {
  container.innerHTML = "";
  const heading = document.createElement("h2");
  heading.textContent = `Lesson ${summary.lessonId} results: ${summary.overallDisplay} ★ overall`;
  container.append(heading);
  const table = document.createElement("table");
  for (const mean of summary.metricMeans) {
    const tr = document.createElement("tr");
    const name = document.createElement("td");
    name.textContent = mean.id;
    const value = document.createElement("td");
    value.textContent = mean.display;
    tr.append(name, value);
    table.append(tr);
  }
  container.append(table);
  const chars = document.createElement("p");
  chars.className = "quiz-characters";
  chars.textContent = summary.characters
    .map((rep) => `${rep.label} ${(rep.metrics.reduce((a, m) => a + m.stars, 0) / rep.metrics.length).toFixed(1)}★`)
    .join("  ");
  container.append(chars);
}
