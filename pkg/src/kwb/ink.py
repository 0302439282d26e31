"""Digital ink data model and its canonical JSON serialization.

A sketch is one character-writing attempt: ordered strokes of timestamped
points plus metadata (label, canvas size). Raw captured ink carries integer
millisecond timestamps relative to the writing session start; resampled ink
(see :mod:`kwb.normalize`) carries interpolated float timestamps.

The JSON schema (canonical key order, ``events`` optional):

    {"metadata": {"label": str, "canvasWidth": num, "canvasHeight": num},
     "strokes": [{"points": [{"x": num, "y": num, "t": int}, ...]}, ...],
     "events": {"startedAt": int, "submittedAt": int,
                "edits": [{"kind": "undo"|"clear", "t": int}, ...]}}
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Union

from .errors import EmptySketchError, InkParseError

EDIT_KINDS = ("undo", "clear")


@dataclass(frozen=True)
class Point:
    x: float
    y: float
    t: float = 0.0  # ms since session start; int in raw ink, float after resampling


@dataclass(frozen=True)
class Stroke:
    """One pen-down-to-pen-up trajectory; timestamps non-decreasing."""

    points: tuple[Point, ...]

    def __post_init__(self):
        if not self.points:
            raise ValueError("stroke must contain at least one point")
        for prev, cur in zip(self.points, self.points[1:]):
            if cur.t < prev.t:
                raise ValueError("stroke timestamps must be non-decreasing")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def start_t(self) -> float:
        return self.points[0].t

    @property
    def end_t(self) -> float:
        return self.points[-1].t

    def reversed_geometry(self) -> "Stroke":
        """Reverse the drawing path while keeping the timestamp sequence."""
        pts = self.points
        return Stroke(tuple(
            Point(pts[len(pts) - 1 - i].x, pts[len(pts) - 1 - i].y, pts[i].t)
            for i in range(len(pts))
        ))


@dataclass(frozen=True)
class Metadata:
    label: str
    canvas_width: float
    canvas_height: float

    def __post_init__(self):
        if not self.label:
            raise ValueError("label must be non-empty")
        if self.canvas_width <= 0 or self.canvas_height <= 0:
            raise ValueError("canvas dimensions must be positive")


@dataclass(frozen=True)
class Sketch:
    """One attempt at a character: strokes in writing order plus metadata."""

    strokes: tuple[Stroke, ...]
    metadata: Metadata

    def __post_init__(self):
        for prev, cur in zip(self.strokes, self.strokes[1:]):
            if cur.start_t < prev.start_t:
                raise ValueError("stroke start times must be non-decreasing")

    @property
    def stroke_count(self) -> int:
        return len(self.strokes)


@dataclass(frozen=True)
class EditEvent:
    kind: str  # "undo" | "clear"
    t: int

    def __post_init__(self):
        if self.kind not in EDIT_KINDS:
            raise ValueError(f"unknown edit kind {self.kind!r}")


@dataclass(frozen=True)
class SessionEvents:
    """Editing activity captured during one writing session."""

    started_at: int
    submitted_at: int
    edit_events: tuple[EditEvent, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.submitted_at < self.started_at:
            raise ValueError("submitted_at must be >= started_at")
        for ev in self.edit_events:
            if not self.started_at <= ev.t <= self.submitted_at:
                raise ValueError(
                    "edit event at t=%s outside [started_at, submitted_at]" % ev.t
                )


@dataclass(frozen=True)
class BBox:
    min_x: float
    min_y: float
    width: float
    height: float

    @property
    def max_side(self) -> float:
        return max(self.width, self.height)


# ---------------------------------------------------------------------------
# Parsing / serialization


def _expect(value, types, path: str, what: str):
    # bool is an int subclass; never acceptable where a number is expected
    if isinstance(value, bool) or not isinstance(value, types):
        raise InkParseError(path, f"expected {what}, got {type(value).__name__}")
    return value


def _parse_number(obj: dict, key: str, path: str) -> float:
    if key not in obj:
        raise InkParseError(f"{path}.{key}", "missing required field")
    v = _expect(obj[key], (int, float), f"{path}.{key}", "a number")
    if not math.isfinite(v):
        raise InkParseError(f"{path}.{key}", "must be finite")
    return v


def _parse_int(obj: dict, key: str, path: str) -> int:
    if key not in obj:
        raise InkParseError(f"{path}.{key}", "missing required field")
    v = _expect(obj[key], int, f"{path}.{key}", "an integer")
    return v


def _parse_point(obj, path: str) -> Point:
    _expect(obj, dict, path, "an object")
    x = _parse_number(obj, "x", path)
    y = _parse_number(obj, "y", path)
    t = _parse_int(obj, "t", path)
    if t < 0:
        raise InkParseError(f"{path}.t", "timestamp must be >= 0")
    return Point(float(x), float(y), t)


def _parse_stroke(obj, path: str) -> Stroke:
    _expect(obj, dict, path, "an object")
    if "points" not in obj:
        raise InkParseError(f"{path}.points", "missing required field")
    raw_points = _expect(obj["points"], list, f"{path}.points", "an array")
    if not raw_points:
        raise InkParseError(f"{path}.points", "stroke must have at least one point")
    points = tuple(
        _parse_point(p, f"{path}.points[{i}]") for i, p in enumerate(raw_points)
    )
    try:
        return Stroke(points)
    except ValueError as exc:
        raise InkParseError(path, str(exc)) from exc


def parse_ink(text: str) -> Sketch:
    """Parse an ink JSON document into a Sketch.

    Field order in the document is irrelevant. Raises InkParseError naming
    the offending path on schema violations, EmptySketchError when the
    stroke list is empty.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InkParseError("$", f"not well-formed JSON: {exc.msg}") from exc
    _expect(doc, dict, "$", "an object")

    if "metadata" not in doc:
        raise InkParseError("metadata", "missing required field")
    meta_obj = _expect(doc["metadata"], dict, "metadata", "an object")
    if "label" not in meta_obj:
        raise InkParseError("metadata.label", "missing required field")
    label = _expect(meta_obj["label"], str, "metadata.label", "a string")
    if not label:
        raise InkParseError("metadata.label", "must be non-empty")
    width = _parse_number(meta_obj, "canvasWidth", "metadata")
    height = _parse_number(meta_obj, "canvasHeight", "metadata")
    if width <= 0 or height <= 0:
        raise InkParseError("metadata", "canvas dimensions must be positive")

    if "strokes" not in doc:
        raise InkParseError("strokes", "missing required field")
    raw_strokes = _expect(doc["strokes"], list, "strokes", "an array")
    if not raw_strokes:
        raise EmptySketchError("empty sketch: no strokes to assess")
    strokes = tuple(
        _parse_stroke(s, f"strokes[{i}]") for i, s in enumerate(raw_strokes)
    )

    try:
        return Sketch(strokes, Metadata(label, float(width), float(height)))
    except ValueError as exc:
        raise InkParseError("strokes", str(exc)) from exc


def parse_events(text: str) -> Union[SessionEvents, None]:
    """Extract the optional ``events`` block from an ink document.

    Returns None when the block is absent (meaning: zero edits, timing
    comes from the point data).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InkParseError("$", f"not well-formed JSON: {exc.msg}") from exc
    _expect(doc, dict, "$", "an object")
    if "events" not in doc or doc["events"] is None:
        return None
    ev_obj = _expect(doc["events"], dict, "events", "an object")
    started = _parse_int(ev_obj, "startedAt", "events")
    submitted = _parse_int(ev_obj, "submittedAt", "events")
    edits = []
    raw_edits = ev_obj.get("edits", [])
    _expect(raw_edits, list, "events.edits", "an array")
    for i, raw in enumerate(raw_edits):
        path = f"events.edits[{i}]"
        _expect(raw, dict, path, "an object")
        kind = _expect(raw.get("kind"), str, f"{path}.kind", "a string")
        if kind not in EDIT_KINDS:
            raise InkParseError(f"{path}.kind", f"must be one of {EDIT_KINDS}")
        t = _parse_int(raw, "t", path)
        edits.append(EditEvent(kind, t))
    try:
        return SessionEvents(started, submitted, tuple(edits))
    except ValueError as exc:
        raise InkParseError("events", str(exc)) from exc


def _point_obj(p: Point) -> dict:
    t = int(p.t) if float(p.t).is_integer() else p.t
    return {"x": p.x, "y": p.y, "t": t}


def serialize_ink(s: Sketch, events: Union[SessionEvents, None] = None) -> str:
    """Serialize a sketch to the canonical ink JSON document.

    Key order is fixed so two serializations of the same sketch are
    byte-identical; parse_ink inverts it exactly.
    """
    doc: dict[str, Any] = {
        "metadata": {
            "label": s.metadata.label,
            "canvasWidth": s.metadata.canvas_width,
            "canvasHeight": s.metadata.canvas_height,
        },
        "strokes": [
            {"points": [_point_obj(p) for p in st.points]} for st in s.strokes
        ],
    }
    if events is not None:
        doc["events"] = {
            "startedAt": events.started_at,
            "submittedAt": events.submitted_at,
            "edits": [{"kind": e.kind, "t": e.t} for e in events.edit_events],
        }
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Elementary geometry / time accessors


def stroke_path_length(st: Stroke) -> float:
    """Sum of Euclidean distances between consecutive points (0 for a dot)."""
    return sum(
        math.hypot(b.x - a.x, b.y - a.y) for a, b in zip(st.points, st.points[1:])
    )


def stroke_duration(st: Stroke) -> float:
    return st.end_t - st.start_t


def sketch_duration(s: Sketch) -> float:
    """First point of the first stroke to last point of the last stroke."""
    return s.strokes[-1].end_t - s.strokes[0].start_t


def _iter_points(s: Union[Sketch, Stroke]) -> Iterable[Point]:
    if isinstance(s, Stroke):
        return iter(s.points)
    return (p for st in s.strokes for p in st.points)


def bounding_box(s: Union[Sketch, Stroke]) -> BBox:
    """Tight axis-aligned box over all points."""
    xs, ys = zip(*((p.x, p.y) for p in _iter_points(s)))
    min_x, min_y = min(xs), min(ys)
    return BBox(min_x, min_y, max(xs) - min_x, max(ys) - min_y)
