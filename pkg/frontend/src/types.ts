// Wire formats of the assessment service. The client never computes scores;
// every number shown on screen originates from one of these payloads.

export interface InkPoint {
  x: number;
  y: number;
  t: number; // integer ms since session start
}

export interface InkStroke {
  points: InkPoint[];
}

export interface InkEvents {
  startedAt: number;
  submittedAt: number;
  edits: { kind: "undo" | "clear"; t: number }[];
}

export interface InkDocument {
  metadata: { label: string; canvasWidth: number; canvasHeight: number };
  strokes: InkStroke[];
  events?: InkEvents;
}

export interface MetricEntry {
  id: string;
  raw: number | null;
  stars: number; // 1..3
}

export interface OverlayStroke {
  inputIndex: number | null;
  modelIndex: number | null;
  tags: string[];
}

export interface AssessmentReport {
  label: string;
  metrics: MetricEntry[];
  overlay: {
    strokes: OverlayStroke[];
    colorKey: Record<string, string>;
  };
}

export interface LessonSummary {
  id: string;
  title: string;
  characters: string[];
}

export interface VocabularyEntry {
  word: string;
  pronunciation: string;
  translation: string;
  highlighted: boolean;
}

export interface CharacterInfo {
  label: string;
  pronunciations: string[];
  translations: string[];
  vocabulary: VocabularyEntry[];
}

export interface LessonDetail {
  id: string;
  title: string;
  characters: CharacterInfo[];
}

export interface TemplateStrokes {
  label: string;
  strokeCount: number;
  size: number;
  strokes: InkStroke[];
}

export interface QuizStartResponse {
  sessionId: string;
  lessonId: string;
  state: "in_progress" | "complete";
  cursor: number;
  total: number;
  currentLabel: string | null;
}

export interface QuizSubmitResponse {
  report: AssessmentReport;
  cursor: number;
  state: "in_progress" | "complete";
  nextLabel: string | null;
}

export interface QuizSummaryResponse {
  lessonId: string;
  characters: AssessmentReport[];
  metricMeans: { id: string; starsMean: number; display: string }[];
  overallMean: number;
  overallDisplay: string;
}

export interface ApiError {
  error: string;
  path?: string;
}
