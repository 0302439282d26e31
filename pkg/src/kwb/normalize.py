"""Transformations that put templates and student input in one coordinate frame.

Order is resample -> scale -> translate. Scaling is whole-sketch and uniform
(aspect preserved) so relative stroke placement and character proportions
survive; per-stroke scaling would destroy the closeness metric.

Resampling spaces the points so consecutive samples are equidistant (equal
chord length) while staying on the original path. Equal chords make
resampling a true fixed point: feeding a resampled stroke back in returns
it unchanged, which is what makes whole-sketch normalization idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptySketchError
from .ink import BBox, Point, Sketch, Stroke, bounding_box

RESAMPLE_N = 64
SCALE_SIZE = 250.0

# relative chord-length spread below which a stroke counts as already
# equally spaced (fast-path identity for re-resampling)
_EQUAL_CHORD_TOL = 1e-7
_CONVERGE_TOL = 1e-10
_MAX_ITERATIONS = 400


@dataclass(frozen=True)
class NormalizedSketch:
    """A sketch with every stroke resampled to exactly ``n`` points,
    uniformly scaled so the bounding box's longer side is ``size``, and
    translated so the box's min corner sits at the origin.

    ``degenerate`` is set when the source had zero extent in both axes
    (a dot); such sketches skip the scaling step.
    """

    strokes: tuple[Stroke, ...]
    source: Sketch
    n: int
    size: float
    degenerate: bool = False

    @property
    def stroke_count(self) -> int:
        return len(self.strokes)

    def to_sketch(self) -> Sketch:
        return Sketch(self.strokes, self.source.metadata)


def _chord_spread(xs: np.ndarray, ys: np.ndarray) -> float:
    chords = np.hypot(np.diff(xs), np.diff(ys))
    mean = chords.mean()
    if mean == 0.0:
        return 0.0
    return float((chords.max() - chords.min()) / mean)


def _uniform_positions(xs, ys, arc, n: int) -> np.ndarray:
    """Arc positions whose sample points have equal consecutive chords.

    Fixed-point iteration: sample, measure the cumulative chord profile,
    and re-place the samples uniformly in that profile.
    """
    total = arc[-1]
    positions = np.linspace(0.0, total, n)
    for _ in range(_MAX_ITERATIONS):
        sx = np.interp(positions, arc, xs)
        sy = np.interp(positions, arc, ys)
        chords = np.hypot(np.diff(sx), np.diff(sy))
        chord_sum = chords.sum()
        if chord_sum == 0.0:
            break
        mean = chord_sum / (n - 1)
        if (chords.max() - chords.min()) / mean <= _CONVERGE_TOL:
            break
        cum = np.concatenate([[0.0], np.cumsum(chords)])
        positions = np.interp(np.linspace(0.0, cum[-1], n), cum, positions)
        positions[0], positions[-1] = 0.0, total
    return positions


def resample(st: Stroke, n: int = RESAMPLE_N) -> Stroke:
    """Redistribute a stroke into n points with equal consecutive spacing.

    Output points lie on the original polyline; first and last points are
    preserved exactly and timestamps are interpolated by arc position.
    A single-point or zero-length stroke yields n copies of its first point.
    Already equally spaced n-point strokes are returned unchanged.

    Pen trajectories are smooth at chord scale, so the spacing iteration
    converges; for degenerate zigzag polylines it falls back to plain
    arc-length placement (points evenly spread over the path instead).
    """
    if n < 2:
        raise ValueError("resample count must be >= 2")
    pts = st.points
    xs = np.array([p.x for p in pts])
    ys = np.array([p.y for p in pts])
    seg = np.hypot(np.diff(xs), np.diff(ys))
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    if arc[-1] == 0.0:
        return Stroke((pts[0],) * n)
    if len(pts) == n and _chord_spread(xs, ys) <= _EQUAL_CHORD_TOL:
        return st

    positions = _uniform_positions(xs, ys, arc, n)
    sx = np.interp(positions, arc, xs)
    sy = np.interp(positions, arc, ys)
    if _chord_spread(sx, sy) > _EQUAL_CHORD_TOL:
        positions = np.linspace(0.0, arc[-1], n)
        sx = np.interp(positions, arc, xs)
        sy = np.interp(positions, arc, ys)

    ts = np.array([p.t for p in pts], dtype=float)
    sampled_t = np.interp(positions, arc, ts)
    out = [pts[0]]
    for k in range(1, n - 1):
        out.append(Point(float(sx[k]), float(sy[k]), float(sampled_t[k])))
    out.append(pts[-1])
    return Stroke(tuple(out))


def _apply(s: Sketch, fx, fy) -> Sketch:
    return Sketch(
        tuple(
            Stroke(tuple(Point(fx(p.x), fy(p.y), p.t) for p in st.points))
            for st in s.strokes
        ),
        s.metadata,
    )


def scale_to_square(s: Sketch, size: float = SCALE_SIZE) -> Sketch:
    """Scale uniformly so the larger bounding-box side equals ``size``.

    A sketch with zero extent in both axes is returned unchanged (the
    degenerate dot case; see NormalizedSketch.degenerate).
    """
    box = bounding_box(s)
    if box.max_side == 0.0:
        return s
    factor = size / box.max_side
    return _apply(s, lambda x: x * factor, lambda y: y * factor)


def translate_to_origin(s: Sketch) -> Sketch:
    """Shift so the bounding-box min corner lands on (0, 0)."""
    box = bounding_box(s)
    return _apply(s, lambda x: x - box.min_x, lambda y: y - box.min_y)


def normalize(s: Sketch, n: int = RESAMPLE_N, size: float = SCALE_SIZE) -> NormalizedSketch:
    """Resample every stroke, then scale and translate the whole sketch."""
    if not s.strokes:
        raise EmptySketchError("cannot normalize a sketch without strokes")
    resampled = Sketch(tuple(resample(st, n) for st in s.strokes), s.metadata)
    degenerate = bounding_box(resampled).max_side == 0.0
    scaled = resampled if degenerate else scale_to_square(resampled, size)
    translated = translate_to_origin(scaled)
    return NormalizedSketch(translated.strokes, s, n, size, degenerate)


def normalized_bbox(ns: NormalizedSketch) -> BBox:
    return bounding_box(ns.to_sketch())
