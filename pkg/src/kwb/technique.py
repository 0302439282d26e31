"""Technique metrics: stroke order and stroke direction over matched pairs.

Direction compares the full resampled path against the model stroke both
forward and reversed; endpoint-only comparison is ambiguous for small
strokes or strokes whose endpoints nearly coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ink import Stroke
from .normalize import NormalizedSketch
from .structure import MatchMap


@dataclass(frozen=True)
class TechniqueResult:
    order_correct: tuple[bool, ...]
    direction_correct: tuple[bool, ...]
    order_ratio: float
    direction_ratio: float


def path_distance(a: Stroke, b: Stroke) -> float:
    """Mean pointwise Euclidean distance between index-aligned strokes."""
    if len(a) != len(b):
        raise ValueError("path_distance requires equal point counts")
    total = sum(
        math.hypot(pa.x - pb.x, pa.y - pb.y) for pa, pb in zip(a.points, b.points)
    )
    return total / len(a)


def assess_direction(m: MatchMap, inp: NormalizedSketch, model: NormalizedSketch) -> tuple[bool, ...]:
    """Per matched pair: correct iff the forward path beats (or ties) the
    point-reversed path against the model stroke."""
    flags = []
    for pair in m.pairs:
        stroke = inp.strokes[pair.input_index]
        model_stroke = model.strokes[pair.model_index]
        forward = path_distance(stroke, model_stroke)
        backward = path_distance(stroke.reversed_geometry(), model_stroke)
        flags.append(forward <= backward)
    return tuple(flags)


def assess_order(m: MatchMap) -> tuple[bool, ...]:
    """Per matched pair (in input order): correct iff its model index equals
    the same position in the sorted model-index sequence.

    Reduces to exact index equality when nothing is missing and degrades
    gracefully when strokes are unmatched.
    """
    by_input = sorted(m.pairs, key=lambda p: p.input_index)
    sequence = [p.model_index for p in by_input]
    return tuple(s == t for s, t in zip(sequence, sorted(sequence)))


def technique_metrics(m: MatchMap, inp: NormalizedSketch, model: NormalizedSketch) -> TechniqueResult:
    order = assess_order(m)
    direction = assess_direction(m, inp, model)
    n = len(m.pairs)
    return TechniqueResult(
        order_correct=order,
        direction_correct=direction,
        order_ratio=sum(order) / n if n else 0.0,
        direction_ratio=sum(direction) / n if n else 0.0,
    )
