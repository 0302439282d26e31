"""Assessment pipeline: run all ten metrics, convert raw values to stars.

Stars are 3/2/1 per configurable cutoff regions; every cutoff lives in
ThresholdConfig so grading strictness can be tuned without code changes.
List-valued metrics (length, closeness, stroke speed) are reduced to the
mean over matched pairs before scoring; sentinel (incomparable) pairs are
skipped and an empty list scores as worst.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence, Union

from .errors import ConfigError, EmptySketchError
from .ink import SessionEvents, Sketch
from .normalize import normalize
from .precision import PrecisionResult, precision_metrics
from .store import Template, TemplateStore
from .structure import MatchMap, StructureResult, match_strokes, structure_metrics
from .technique import TechniqueResult, technique_metrics

METRIC_IDS = (
    "stroke_match",
    "stroke_valid",
    "stroke_exist",
    "stroke_order",
    "stroke_direction",
    "stroke_edit",
    "stroke_length",
    "stroke_closeness",
    "stroke_speed",
    "symbol_speed",
)

RATIO_METRICS = ("stroke_match", "stroke_valid", "stroke_exist", "stroke_order", "stroke_direction")
BAND_METRICS = ("stroke_length", "stroke_speed", "symbol_speed")

COLOR_KEY = {
    "matched": "green",
    "missing": "blue",
    "extraneous": "red",
    "order-wrong": "orange",
    "direction-wrong": "purple",
}


@dataclass(frozen=True)
class ThresholdConfig:
    """All tunable cutoffs for star scoring and match acceptance.

    Invariant: every three-star region is contained in its two-star region.
    """

    resample_n: int = 64
    scale_size: float = 250.0
    match_threshold: float = 60.0
    # correctness ratios (match/valid/exist/order/direction)
    ratio_three_star_min: float = 0.9
    ratio_two_star_min: float = 0.6
    # closeness: max mean distance in normalized px
    closeness_three_star_max: float = 12.0
    closeness_two_star_max: float = 30.0
    # length and speed ratios: symmetric acceptance bands
    band_three_star: tuple[float, float] = (0.75, 1.33)
    band_two_star: tuple[float, float] = (0.5, 2.0)
    # edit counts
    edit_three_star_max: int = 0
    edit_two_star_max: int = 2

    def __post_init__(self):
        ok = (
            self.resample_n >= 2
            and self.scale_size > 0
            and self.match_threshold >= 0
            and self.ratio_three_star_min >= self.ratio_two_star_min
            and self.closeness_three_star_max <= self.closeness_two_star_max
            and self.band_two_star[0] <= self.band_three_star[0]
            and self.band_three_star[0] <= self.band_three_star[1]
            and self.band_three_star[1] <= self.band_two_star[1]
            and self.edit_three_star_max <= self.edit_two_star_max
        )
        if not ok:
            raise ConfigError("threshold config regions must be ordered (3-star inside 2-star)")

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ThresholdConfig":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read threshold config {path}: {exc}") from exc
        try:
            return cls(
                resample_n=doc["resampleN"],
                scale_size=doc["scaleSize"],
                match_threshold=doc["matchThreshold"],
                ratio_three_star_min=doc["ratioStars"]["threeStarMin"],
                ratio_two_star_min=doc["ratioStars"]["twoStarMin"],
                closeness_three_star_max=doc["closenessStars"]["threeStarMax"],
                closeness_two_star_max=doc["closenessStars"]["twoStarMax"],
                band_three_star=tuple(doc["bandStars"]["threeStar"]),
                band_two_star=tuple(doc["bandStars"]["twoStar"]),
                edit_three_star_max=doc["editStars"]["threeStarMax"],
                edit_two_star_max=doc["editStars"]["twoStarMax"],
            )
        except (KeyError, TypeError) as exc:
            raise ConfigError(f"malformed threshold config {path}: {exc}") from exc

    def to_file(self, path: Union[str, Path]) -> None:
        doc = {
            "resampleN": self.resample_n,
            "scaleSize": self.scale_size,
            "matchThreshold": self.match_threshold,
            "ratioStars": {
                "threeStarMin": self.ratio_three_star_min,
                "twoStarMin": self.ratio_two_star_min,
            },
            "closenessStars": {
                "threeStarMax": self.closeness_three_star_max,
                "twoStarMax": self.closeness_two_star_max,
            },
            "bandStars": {
                "threeStar": list(self.band_three_star),
                "twoStar": list(self.band_two_star),
            },
            "editStars": {
                "threeStarMax": self.edit_three_star_max,
                "twoStarMax": self.edit_two_star_max,
            },
        }
        Path(path).write_text(
            json.dumps(doc, ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )


@dataclass(frozen=True)
class MetricScore:
    id: str
    raw: Optional[float]  # reduced scalar; None = incomparable / no pairs
    stars: int


@dataclass(frozen=True)
class OverlayStroke:
    input_index: Optional[int]
    model_index: Optional[int]
    tags: tuple[str, ...]


@dataclass(frozen=True)
class AssessmentReport:
    label: str
    metrics: tuple[MetricScore, ...]
    match_map: MatchMap
    structure: StructureResult
    technique: TechniqueResult
    precision: PrecisionResult
    overlay: tuple[OverlayStroke, ...]
    color_key: dict = field(default_factory=lambda: dict(COLOR_KEY))

    def metric(self, metric_id: str) -> MetricScore:
        for m in self.metrics:
            if m.id == metric_id:
                return m
        raise KeyError(metric_id)

    def stars_by_id(self) -> dict[str, int]:
        return {m.id: m.stars for m in self.metrics}


def _reduce(values: Sequence[Optional[float]]) -> Optional[float]:
    usable = [v for v in values if v is not None]
    if not usable:
        return None
    return math.fsum(usable) / len(usable)


def score_metric(metric_id: str, raw, cfg: ThresholdConfig) -> int:
    """Map one metric's raw value to a 3/2/1 star score.

    Accepts a scalar or a per-pair list (reduced to its mean first);
    None or an empty list scores as the worst region.
    """
    if metric_id not in METRIC_IDS:
        raise ValueError(f"unknown metric id {metric_id!r}")
    if isinstance(raw, (list, tuple)):
        raw = _reduce(raw)
    if raw is None:
        return 1

    if metric_id == "stroke_edit":
        if raw <= cfg.edit_three_star_max:
            return 3
        if raw <= cfg.edit_two_star_max:
            return 2
        return 1
    if metric_id in RATIO_METRICS:
        if raw >= cfg.ratio_three_star_min:
            return 3
        if raw >= cfg.ratio_two_star_min:
            return 2
        return 1
    if metric_id == "stroke_closeness":
        if raw <= cfg.closeness_three_star_max:
            return 3
        if raw <= cfg.closeness_two_star_max:
            return 2
        return 1
    # band metrics: length / speed ratios
    if cfg.band_three_star[0] <= raw <= cfg.band_three_star[1]:
        return 3
    if cfg.band_two_star[0] <= raw <= cfg.band_two_star[1]:
        return 2
    return 1


def _build_overlay(
    m: MatchMap, technique: TechniqueResult
) -> tuple[OverlayStroke, ...]:
    order_flags = {p.input_index: ok for p, ok in zip(
        sorted(m.pairs, key=lambda p: p.input_index), technique.order_correct
    )}
    direction_flags = {p.input_index: ok for p, ok in zip(
        m.pairs, technique.direction_correct
    )}
    matched_model = {p.input_index: p.model_index for p in m.pairs}

    entries = []
    for i in range(m.input_count):
        if i in matched_model:
            tags = ["matched"]
            if not order_flags.get(i, True):
                tags.append("order-wrong")
            if not direction_flags.get(i, True):
                tags.append("direction-wrong")
            entries.append(OverlayStroke(i, matched_model[i], tuple(tags)))
        else:
            entries.append(OverlayStroke(i, None, ("extraneous",)))
    for j in m.unmatched_model:
        entries.append(OverlayStroke(None, j, ("missing",)))
    return tuple(entries)


def assess_character(
    inp: Sketch,
    events: Union[SessionEvents, None],
    label: str,
    store: TemplateStore,
    cfg: Optional[ThresholdConfig] = None,
) -> AssessmentReport:
    """Run the full pipeline against the template for ``label``.

    Normalize the input with the same transformations as the templates,
    find the stroke correspondence, evaluate all ten metrics, and score
    each one. Deterministic for identical input and config.
    """
    cfg = cfg or ThresholdConfig()
    if (cfg.resample_n, cfg.scale_size) != (store.resample_n, store.scale_size):
        raise ConfigError(
            "threshold config normalization parameters do not match the store "
            f"(config {cfg.resample_n}/{cfg.scale_size}, store {store.resample_n}/{store.scale_size})"
        )
    template = store.lookup_template(label)
    if not inp.strokes:
        raise EmptySketchError("empty sketch: no strokes to assess")

    norm = normalize(inp, cfg.resample_n, cfg.scale_size)
    match_map = match_strokes(norm, template.normalized, cfg.match_threshold)
    structure = structure_metrics(match_map)
    technique = technique_metrics(match_map, norm, template.normalized)
    precision = precision_metrics(match_map, norm, template.normalized, events)

    raws: dict[str, Optional[float]] = {
        "stroke_match": structure.match_ratio,
        "stroke_valid": structure.valid_ratio,
        "stroke_exist": structure.exist_ratio,
        "stroke_order": technique.order_ratio,
        "stroke_direction": technique.direction_ratio,
        "stroke_edit": precision.edit_count,
        "stroke_length": _reduce(precision.length_ratios),
        "stroke_closeness": _reduce(precision.closeness_distances),
        "stroke_speed": _reduce(precision.stroke_speed_ratios),
        "symbol_speed": precision.symbol_speed_ratio,
    }
    metrics = tuple(
        MetricScore(mid, raws[mid], score_metric(mid, raws[mid], cfg))
        for mid in METRIC_IDS
    )
    return AssessmentReport(
        label=label,
        metrics=metrics,
        match_map=match_map,
        structure=structure,
        technique=technique,
        precision=precision,
        overlay=_build_overlay(match_map, technique),
    )


# ---------------------------------------------------------------------------
# Serialization


def report_obj(report: AssessmentReport) -> dict:
    return {
        "label": report.label,
        "metrics": [
            {"id": m.id, "raw": m.raw, "stars": m.stars} for m in report.metrics
        ],
        "overlay": {
            "strokes": [
                {
                    "inputIndex": s.input_index,
                    "modelIndex": s.model_index,
                    "tags": list(s.tags),
                }
                for s in report.overlay
            ],
            "colorKey": {tag: report.color_key[tag] for tag in COLOR_KEY},
        },
    }


def serialize_report(report: AssessmentReport) -> str:
    """Canonical JSON for a report; byte-identical across runs."""
    return json.dumps(report_obj(report), ensure_ascii=False, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Quiz aggregation


@dataclass(frozen=True)
class MetricMean:
    id: str
    stars_mean: float
    display: str  # rounded half-up to one decimal


@dataclass(frozen=True)
class QuizReport:
    lesson_id: str
    reports: tuple[AssessmentReport, ...]
    metric_means: tuple[MetricMean, ...]
    overall_mean: float
    overall_display: str


def _display(value: float) -> str:
    return str(Decimal(repr(value)).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def quiz_summary(lesson_id: str, reports: Sequence[AssessmentReport]) -> QuizReport:
    """Aggregate per-character reports into lesson-wide mean stars."""
    if not reports:
        raise ValueError("quiz summary requires at least one report")
    means = []
    for mid in METRIC_IDS:
        stars = [r.metric(mid).stars for r in reports]
        mean = math.fsum(stars) / len(stars)
        means.append(MetricMean(mid, mean, _display(mean)))
    all_stars = [m.stars for r in reports for m in r.metrics]
    overall = math.fsum(all_stars) / len(all_stars)
    return QuizReport(
        lesson_id=lesson_id,
        reports=tuple(reports),
        metric_means=tuple(means),
        overall_mean=overall,
        overall_display=_display(overall),
    )


def quiz_report_obj(q: QuizReport) -> dict:
    return {
        "lessonId": q.lesson_id,
        "characters": [report_obj(r) for r in q.reports],
        "metricMeans": [
            {"id": m.id, "starsMean": m.stars_mean, "display": m.display}
            for m in q.metric_means
        ],
        "overallMean": q.overall_mean,
        "overallDisplay": q.overall_display,
    }


def serialize_quiz_report(q: QuizReport) -> str:
    return json.dumps(quiz_report_obj(q), ensure_ascii=False, separators=(",", ":"))
