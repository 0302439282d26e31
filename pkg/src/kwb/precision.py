"""Precision metrics: edit count, stroke length, closeness, and speeds.

Length, closeness and stroke speed are computed per matched pair in the
shared normalized frame; a zero model measure yields an ``incomparable``
sentinel (None) rather than a division result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .ink import SessionEvents, sketch_duration, stroke_duration, stroke_path_length
from .normalize import NormalizedSketch
from .structure import MatchMap
from .technique import path_distance


@dataclass(frozen=True)
class PrecisionResult:
    edit_count: int
    length_ratios: tuple[Optional[float], ...]
    closeness_distances: tuple[float, ...]
    stroke_speed_ratios: tuple[Optional[float], ...]
    symbol_speed_ratio: Optional[float]


def assess_edit(ev: Union[SessionEvents, None]) -> int:
    """Count of undo plus clear events; absent events means zero edits."""
    if ev is None:
        return 0
    return len(ev.edit_events)


def assess_length_closeness(
    m: MatchMap, inp: NormalizedSketch, model: NormalizedSketch
) -> tuple[tuple[Optional[float], ...], tuple[float, ...]]:
    """Per pair: input/model path-length ratio, and mean pointwise distance
    in the better of the two orientations (the one assess_direction picks)."""
    ratios = []
    distances = []
    for pair in m.pairs:
        stroke = inp.strokes[pair.input_index]
        model_stroke = model.strokes[pair.model_index]
        model_len = stroke_path_length(model_stroke)
        if model_len == 0.0:
            ratios.append(None)  # incomparable
        else:
            ratios.append(stroke_path_length(stroke) / model_len)
        distances.append(min(
            path_distance(stroke, model_stroke),
            path_distance(stroke.reversed_geometry(), model_stroke),
        ))
    return tuple(ratios), tuple(distances)


def assess_speed(
    m: MatchMap, inp: NormalizedSketch, model: NormalizedSketch
) -> tuple[tuple[Optional[float], ...], Optional[float]]:
    """Per-pair stroke duration ratios and the whole-sketch duration ratio."""
    ratios: list[Optional[float]] = []
    for pair in m.pairs:
        model_dur = stroke_duration(model.strokes[pair.model_index])
        input_dur = stroke_duration(inp.strokes[pair.input_index])
        if model_dur == 0.0:
            ratios.append(None)
        else:
            ratios.append(input_dur / model_dur)
    model_total = sketch_duration(model.to_sketch())
    input_total = sketch_duration(inp.to_sketch())
    symbol = None if model_total == 0.0 else input_total / model_total
    return tuple(ratios), symbol


def precision_metrics(
    m: MatchMap,
    inp: NormalizedSketch,
    model: NormalizedSketch,
    events: Union[SessionEvents, None],
) -> PrecisionResult:
    length_ratios, closeness = assess_length_closeness(m, inp, model)
    speed_ratios, symbol_speed = assess_speed(m, inp, model)
    return PrecisionResult(
        edit_count=assess_edit(events),
        length_ratios=length_ratios,
        closeness_distances=closeness,
        stroke_speed_ratios=speed_ratios,
        symbol_speed_ratio=symbol_speed,
    )
