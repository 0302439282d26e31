#!/usr/bin/env python3
"""Author the sample expert ink shipped in data/raw_ink/.

Each character is defined as per-stroke control polylines on a 400x400
canvas, in dictionary stroke order; points are sampled along each stroke
at constant pen speed so the timing data is plausible. Rerunning the
script regenerates identical files.

Usage: python scripts/make_sample_ink.py [out_dir]
"""

import json
import math
import sys
from pathlib import Path

CANVAS = 400
PEN_SPEED = 0.35       # px per ms
SAMPLE_INTERVAL = 16.0  # ms between samples (~60 Hz digitizer)
STROKE_GAP_MS = 180

# Control polylines per stroke, authored so bounding-box extremes sit on
# stroke endpoints (stable under resampling).
CHARACTERS = {
    "一": [
        [(60, 200), (340, 206)],
    ],
    "二": [
        [(90, 150), (310, 154)],
        [(60, 270), (340, 276)],
    ],
    "三": [
        [(90, 110), (310, 114)],
        [(110, 200), (290, 204)],
        [(70, 300), (330, 306)],
    ],
    "十": [
        [(70, 200), (330, 204)],
        [(200, 80), (202, 330)],
    ],
    "中": [
        [(120, 110), (120, 250)],
        [(120, 110), (280, 110), (280, 250)],
        [(120, 250), (280, 250)],
        [(200, 60), (200, 350)],
    ],
    "人": [
        [(210, 90), (170, 200), (80, 330)],
        [(195, 160), (250, 240), (330, 330)],
    ],
    "大": [
        [(80, 180), (320, 184)],
        [(200, 70), (180, 180), (100, 340)],
        [(205, 190), (260, 260), (330, 340)],
    ],
    "王": [
        [(100, 100), (300, 104)],
        [(110, 200), (290, 204)],
        [(200, 104), (202, 296)],
        [(80, 300), (320, 306)],
    ],
    "口": [
        [(120, 100), (120, 300)],
        [(120, 100), (280, 100), (280, 300)],
        [(120, 300), (280, 300)],
    ],
    "日": [
        [(140, 80), (140, 320)],
        [(140, 80), (260, 80), (260, 320)],
        [(140, 200), (260, 200)],
        [(140, 320), (260, 320)],
    ],
    "川": [
        [(125, 95), (105, 305)],
        [(200, 130), (200, 270)],
        [(290, 85), (295, 330)],
    ],
    "山": [
        [(200, 70), (200, 270)],
        [(110, 130), (110, 290), (290, 290)],
        [(292, 130), (292, 288)],
    ],
}


def polyline_length(pts):
    return sum(math.dist(a, b) for a, b in zip(pts, pts[1:]))


def point_at(pts, target):
    """Position at arc length `target` along the polyline."""
    walked = 0.0
    for a, b in zip(pts, pts[1:]):
        seg = math.dist(a, b)
        if walked + seg >= target and seg > 0:
            f = (target - walked) / seg
            return (a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1]))
        walked += seg
    return pts[-1]


def sample_stroke(control, start_ms):
    length = polyline_length(control)
    duration = length / PEN_SPEED
    count = max(2, int(round(duration / SAMPLE_INTERVAL)) + 1)
    points = []
    for k in range(count):
        frac = k / (count - 1)
        x, y = point_at(control, frac * length)
        points.append({
            "x": round(x, 1),
            "y": round(y, 1),
            "t": start_ms + int(round(frac * duration)),
        })
    return points


def build_character(label, strokes):
    t = 0
    out = []
    for control in strokes:
        pts = sample_stroke(control, t)
        out.append({"points": pts})
        t = pts[-1]["t"] + STROKE_GAP_MS
    return {
        "metadata": {"label": label, "canvasWidth": CANVAS, "canvasHeight": CANVAS},
        "strokes": out,
    }


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/raw_ink")
    out_dir.mkdir(parents=True, exist_ok=True)
    for label, strokes in CHARACTERS.items():
        doc = build_character(label, strokes)
        path = out_dir / f"{label}.json"
        path.write_text(
            json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n",
            encoding="utf-8",
        )
        print(f"{path} ({len(strokes)} strokes)")


if __name__ == "__main__":
    main()
