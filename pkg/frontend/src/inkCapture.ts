// Stroke capture state: pointer events in, ink documents out.
//
// Coordinates are sent raw (canvas pixels) with the canvas dimensions in
// metadata; the server owns normalization. Timestamps are integer ms
// relative to the session start. Undo removes the last stroke, Clear
// removes all; both append to the edit log that feeds the stroke-edit
// metric.

import { InkDocument, InkEvents, InkPoint, InkStroke } from "./types.js";

export interface PointerSample {
  x: number;
  y: number;
  time: number; // absolute ms (performance.now() or synthetic)
}

export class CanvasSession {
  readonly canvasWidth: number;
  readonly canvasHeight: number;

  private strokes: InkStroke[] = [];
  private pending: InkPoint[] | null = null;
  private edits: { kind: "undo" | "clear"; t: number }[] = [];
  private origin: number | null = null; // session epoch in absolute ms

  constructor(canvasWidth: number, canvasHeight: number) {
    this.canvasWidth = canvasWidth;
    this.canvasHeight = canvasHeight;
  }

  private rel(time: number): number {
    if (this.origin === null) this.origin = time;
    return Math.max(0, Math.round(time - this.origin));
  }

  get isDrawing(): boolean {
    return this.pending !== null;
  }

  get strokeCount(): number {
    return this.strokes.length;
  }

  get isEmpty(): boolean {
    return this.strokes.length === 0 && this.pending === null;
  }

  currentStrokes(): InkStroke[] {
    const all = this.strokes.slice();
    if (this.pending && this.pending.length > 0) all.push({ points: this.pending.slice() });
    return all;
  }

  pointerDown(s: PointerSample): void {
    if (this.pending) this.pointerUp(s); // stray down without up
    this.pending = [{ x: s.x, y: s.y, t: this.rel(s.time) }];
  }

  pointerMove(s: PointerSample): void {
    if (!this.pending) return; // hover, not drawing
    const t = this.rel(s.time);
    const last = this.pending[this.pending.length - 1];
    if (t < last.t) return; // out-of-order event
    this.pending.push({ x: s.x, y: s.y, t });
  }

  pointerUp(s: PointerSample): void {
    if (!this.pending) return;
    const t = this.rel(s.time);
    const last = this.pending[this.pending.length - 1];
    // a click without movement stays a single-point stroke (a dot is legal)
    if (s.x !== last.x || s.y !== last.y) {
      this.pending.push({ x: s.x, y: s.y, t: Math.max(t, last.t) });
    }
    this.strokes.push({ points: this.pending });
    this.pending = null;
  }

  undo(time: number): void {
    this.edits.push({ kind: "undo", t: this.rel(time) });
    this.strokes.pop();
  }

  clear(time: number): void {
    this.edits.push({ kind: "clear", t: this.rel(time) });
    this.strokes = [];
    this.pending = null;
  }

  reset(): void {
    this.strokes = [];
    this.pending = null;
    this.edits = [];
    this.origin = null;
  }

  toInkDocument(label: string, submitTime: number): InkDocument {
    const submittedAt = this.rel(submitTime);
    const events: InkEvents = {
      startedAt: 0,
      submittedAt,
      edits: this.edits.slice(),
    };
    return {
      metadata: {
        label,
        canvasWidth: this.canvasWidth,
        canvasHeight: this.canvasHeight,
      },
      strokes: this.strokes.map((st) => ({ points: st.points.slice() })),
      events,
    };
  }
}
