// Study-session state machine and presentation helpers.
//
// Practice mode walks a lesson freely (Back/Next, info panel shown);
// quiz mode is forward-only, hides the supplementary info, and ends in a
// lesson-wide summary. All scores shown come from server reports.

import { AssessmentReport, MetricEntry } from "./types.js";

export type Mode = "practice" | "quiz";

export const METRIC_LABELS: Record<string, string> = {
  stroke_match: "Stroke match",
  stroke_valid: "Stroke valid",
  stroke_exist: "Stroke exist",
  stroke_order: "Stroke order",
  stroke_direction: "Stroke direction",
  stroke_edit: "Stroke edit",
  stroke_length: "Stroke length",
  stroke_closeness: "Stroke closeness",
  stroke_speed: "Stroke speed",
  symbol_speed: "Symbol speed",
};

// Which overlay tag each metric's animation highlights.
export const METRIC_FOCUS_TAG: Record<string, string> = {
  stroke_match: "matched",
  stroke_valid: "missing",
  stroke_exist: "extraneous",
  stroke_order: "order-wrong",
  stroke_direction: "direction-wrong",
};

export interface MetricRow {
  id: string;
  label: string;
  stars: number;
  starIcons: string; // e.g. starIcons(2) === "★★☆"
  hasAnimation: boolean;
}

export function starIcons(stars: number): string {
  const filled = Math.max(0, Math.min(3, stars));
  return "★".repeat(filled) + "☆".repeat(3 - filled);
}

export function metricRows(report: AssessmentReport): MetricRow[] {
  return report.metrics.map((m: MetricEntry) => ({
    id: m.id,
    label: METRIC_LABELS[m.id] ?? m.id,
    stars: m.stars,
    starIcons: starIcons(m.stars),
    hasAnimation: m.id in METRIC_FOCUS_TAG,
  }));
}

export interface OverlayRender {
  // color per visible stroke, resolved through the report's color key
  strokes: { inputIndex: number | null; modelIndex: number | null; color: string }[];
  // legend entries actually used by this animation
  legend: { tag: string; color: string }[];
}

export function overlayForMetric(report: AssessmentReport, metricId: string): OverlayRender {
  const key = report.overlay.colorKey;
  const focus = METRIC_FOCUS_TAG[metricId];
  const usedTags = new Set<string>();
  const strokes = report.overlay.strokes.map((s) => {
    const tag = focus !== undefined && s.tags.includes(focus)
      ? focus
      : s.tags.includes("matched") ? "matched" : s.tags[0];
    usedTags.add(tag);
    return { inputIndex: s.inputIndex, modelIndex: s.modelIndex, color: key[tag] };
  });
  return {
    strokes,
    legend: Array.from(usedTags).sort().map((tag) => ({ tag, color: key[tag] })),
  };
}

export interface NavView {
  mode: Mode;
  label: string | null;
  position: number; // 0-based index in the lesson
  total: number;
  infoPanelVisible: boolean;
  backVisible: boolean;
  backEnabled: boolean;
  nextVisible: boolean;
  finished: boolean;
}

export class StudySession {
  readonly mode: Mode;
  readonly lessonId: string;
  readonly labels: string[];
  private index = 0;
  private done = false;

  constructor(mode: Mode, lessonId: string, labels: string[]) {
    if (labels.length === 0) throw new Error("lesson has no characters");
    this.mode = mode;
    this.lessonId = lessonId;
    this.labels = labels.slice();
  }

  view(): NavView {
    return {
      mode: this.mode,
      label: this.done ? null : this.labels[this.index],
      position: this.index,
      total: this.labels.length,
      infoPanelVisible: this.mode === "practice",
      backVisible: this.mode === "practice",
      backEnabled: this.mode === "practice" && this.index > 0,
      nextVisible: true,
      finished: this.done,
    };
  }

  back(): boolean {
    if (this.mode !== "practice" || this.index === 0 || this.done) return false;
    this.index -= 1;
    return true;
  }

  // In quiz mode forward movement is driven by assessed submissions only.
  next(): boolean {
    if (this.done) return false;
    if (this.mode === "quiz") return false;
    if (this.index + 1 < this.labels.length) {
      this.index += 1;
      return true;
    }
    return false;
  }

  advanceAfterSubmit(cursor: number, state: "in_progress" | "complete"): void {
    if (this.mode !== "quiz") throw new Error("advanceAfterSubmit is quiz-only");
    this.index = Math.min(cursor, this.labels.length - 1);
    if (state === "complete") this.done = true;
  }
}
