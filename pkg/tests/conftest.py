import math
import random
from itertools import permutations
from pathlib import Path

import pytest

from kwb import ThresholdConfig, TemplateStore, preprocess_templates
from kwb.ink import Metadata, Point, Sketch, Stroke, bounding_box
from kwb.normalize import resample

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"
RAW_INK_DIR = DATA_DIR / "raw_ink"
CATALOG_FILE = DATA_DIR / "catalog.json"
THRESHOLDS_FILE = DATA_DIR / "thresholds.json"


@pytest.fixture(scope="session")
def store(tmp_path_factory) -> TemplateStore:
    out = tmp_path_factory.mktemp("store")
    return preprocess_templates(RAW_INK_DIR, CATALOG_FILE, out)


@pytest.fixture(scope="session")
def store_dir(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("store_on_disk")
    preprocess_templates(RAW_INK_DIR, CATALOG_FILE, out)
    return out


@pytest.fixture(scope="session")
def cfg() -> ThresholdConfig:
    return ThresholdConfig.from_file(THRESHOLDS_FILE)


# ---------------------------------------------------------------------------
# Random geometry generators (seeded per test for reproducibility)


def make_polyline(rng: random.Random, n_points=None, span=250.0, t0=0) -> Stroke:
    """Jagged polyline with uniformly random vertices; for geometry oracles."""
    n = n_points or rng.randint(2, 12)
    t = t0
    pts = []
    for _ in range(n):
        pts.append(Point(rng.uniform(0, span), rng.uniform(0, span), t))
        t += rng.randint(1, 40)
    return Stroke(tuple(pts))


def make_stroke(rng: random.Random, span=380.0, t0=0) -> Stroke:
    """Pen-like stroke: dense samples along a path with bounded turn rate.

    The walk is unconstrained, then fitted into the canvas affinely, so the
    path never folds back on itself the way coordinate clamping would.
    """
    n = rng.randint(20, 90)
    x = y = 0.0
    heading = rng.uniform(0, 2 * math.pi)
    xs, ys, ts = [x], [y], [t0]
    t = t0
    for _ in range(n - 1):
        heading += rng.gauss(0, 0.2)
        step = rng.uniform(2.5, 7.5)
        x += step * math.cos(heading)
        y += step * math.sin(heading)
        t += rng.randint(8, 24)
        xs.append(x)
        ys.append(y)
        ts.append(t)
    min_x, min_y = min(xs), min(ys)
    extent = max(max(xs) - min_x, max(ys) - min_y, 1e-9)
    shrink = min(1.0, 0.9 * span / extent)
    off_x = rng.uniform(0, span - extent * shrink)
    off_y = rng.uniform(0, span - extent * shrink)
    return Stroke(tuple(
        Point((px - min_x) * shrink + off_x, (py - min_y) * shrink + off_y, pt)
        for px, py, pt in zip(xs, ys, ts)
    ))


def make_sketch(rng: random.Random, n_strokes=None, span=380.0, label="x") -> Sketch:
    n = n_strokes or rng.randint(1, 6)
    strokes = []
    t = 0
    for _ in range(n):
        st = make_stroke(rng, span=span, t0=t)
        strokes.append(st)
        t = int(st.end_t) + rng.randint(40, 200)
    return Sketch(tuple(strokes), Metadata(label, 400.0, 400.0))


def make_resampled_stroke(rng: random.Random, n=64, span=250.0) -> Stroke:
    return resample(make_stroke(rng, span=span), n)


# ---------------------------------------------------------------------------
# Independent oracles


def brute_force_hausdorff(a: Stroke, b: Stroke) -> float:
    def directed(p_from, p_to):
        worst = 0.0
        for p in p_from:
            best = min(math.hypot(p.x - q.x, p.y - q.y) for q in p_to)
            worst = max(worst, best)
        return worst

    return max(directed(a.points, b.points), directed(b.points, a.points))


def brute_force_assignment(cost_rows):
    """Minimum total cost over all injections of the smaller side into the
    larger; returns (total, pairs). Exponential; for n <= ~6 only."""
    n_in = len(cost_rows)
    n_model = len(cost_rows[0]) if n_in else 0
    best = (math.inf, None)
    if n_in <= n_model:
        for perm in permutations(range(n_model), n_in):
            total = math.fsum(cost_rows[i][perm[i]] for i in range(n_in))
            if total < best[0]:
                best = (total, [(i, perm[i]) for i in range(n_in)])
    else:
        for perm in permutations(range(n_in), n_model):
            total = math.fsum(cost_rows[perm[j]][j] for j in range(n_model))
            if total < best[0]:
                best = (total, [(perm[j], j) for j in range(n_model)])
    return best


# ---------------------------------------------------------------------------
# Template mutation helpers (used by scoring and acceptance tests)


def shift_stroke(st: Stroke, dt) -> Stroke:
    return Stroke(tuple(Point(p.x, p.y, p.t + dt) for p in st.points))


def reverse_mutation(sketch: Sketch, index=0) -> Sketch:
    """Point-reverse one stroke's geometry, keeping its timestamp sequence."""
    strokes = list(sketch.strokes)
    strokes[index] = strokes[index].reversed_geometry()
    return Sketch(tuple(strokes), sketch.metadata)


def swap_mutation(sketch: Sketch, index=0) -> Sketch:
    """Write strokes index and index+1 in swapped temporal order.

    Each stroke keeps its own internal timing; the block start/end and the
    inter-stroke gap are preserved, so only stroke order changes.
    """
    strokes = list(sketch.strokes)
    a, b = strokes[index], strokes[index + 1]
    gap = b.start_t - a.end_t
    dur_b = b.end_t - b.start_t
    new_a = shift_stroke(b, a.start_t - b.start_t)
    new_b = shift_stroke(a, dur_b + gap)
    strokes[index], strokes[index + 1] = new_a, new_b
    return Sketch(tuple(strokes), sketch.metadata)


def _resampled_bbox(strokes, n=64):
    pts = [p for st in strokes for p in resample(st, n).points]
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return min(xs), min(ys), max(max(xs) - min(xs), max(ys) - min(ys))


def deletable_stroke_index(sketch: Sketch, n=64):
    """Temporally interior stroke whose removal keeps the resampled
    bounding-box min corner and max side; None when no stroke qualifies."""
    full = _resampled_bbox(sketch.strokes, n)
    for i in range(1, len(sketch.strokes) - 1):
        rest = [st for k, st in enumerate(sketch.strokes) if k != i]
        if all(math.isclose(x, y, abs_tol=1e-9) for x, y in zip(_resampled_bbox(rest, n), full)):
            return i
    return None


def delete_mutation(sketch: Sketch, index: int) -> Sketch:
    strokes = tuple(st for k, st in enumerate(sketch.strokes) if k != index)
    return Sketch(strokes, sketch.metadata)


def spurious_stroke_site(sketch: Sketch):
    """Grid-search a placement for a small extra stroke that keeps the
    bounding-box min corner and max side and sits far from every stroke."""
    box = bounding_box(sketch)
    side = box.max_side
    pts = [p for st in sketch.strokes for p in st.points]
    best, best_dist = None, -1.0
    steps = 40
    for ix in range(steps + 1):
        for iy in range(steps + 1):
            cx = box.min_x + side * ix / steps
            cy = box.min_y + side * iy / steps
            # the 8px segment must stay inside the allowed square
            if cx + 8.0 > box.min_x + side or cy + 1.0 > box.min_y + side:
                continue
            d = min(math.hypot(p.x - cx, p.y - cy) for p in pts)
            if d > best_dist:
                best, best_dist = (cx, cy), d
    return best, best_dist


def add_mutation(sketch: Sketch, site) -> Sketch:
    """Insert a small spurious stroke at `site` into the largest
    inter-stroke time gap (symbol duration is untouched)."""
    cx, cy = site
    gaps = [
        (sketch.strokes[i + 1].start_t - sketch.strokes[i].end_t, i)
        for i in range(len(sketch.strokes) - 1)
    ]
    if not gaps or max(gaps)[0] < 60:
        return None
    gap, i = max(gaps)
    t0 = int(sketch.strokes[i].end_t) + int(gap) // 3
    spurious = Stroke((
        Point(round(cx, 1), round(cy, 1), t0),
        Point(round(cx + 4.0, 1), round(cy + 0.5, 1), t0 + 20),
        Point(round(cx + 8.0, 1), round(cy + 1.0, 1), t0 + 40),
    ))
    strokes = list(sketch.strokes)
    strokes.insert(i + 1, spurious)
    return Sketch(tuple(strokes), sketch.metadata)
