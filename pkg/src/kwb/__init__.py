"""Kanji writing assessment engine.

Scores a student's handwritten character (timestamped digital ink) against
an expert template using ten metrics across three families: structure
(stroke match / valid / exist), technique (order / direction), and
precision (edits, length, closeness, stroke and symbol speed).
"""

from .errors import (
    ConfigError,
    EmptySketchError,
    InkParseError,
    KwbError,
    LessonNotFoundError,
    StoreError,
    TemplateNotFoundError,
)
from .ink import (
    BBox,
    EditEvent,
    Metadata,
    Point,
    SessionEvents,
    Sketch,
    Stroke,
    bounding_box,
    parse_events,
    parse_ink,
    serialize_ink,
    sketch_duration,
    stroke_duration,
    stroke_path_length,
)
from .normalize import NormalizedSketch, normalize, resample, scale_to_square, translate_to_origin
from .scoring import (
    METRIC_IDS,
    AssessmentReport,
    MetricScore,
    QuizReport,
    ThresholdConfig,
    assess_character,
    quiz_summary,
    score_metric,
    serialize_quiz_report,
    serialize_report,
)
from .store import CharacterInfo, Lesson, Template, TemplateStore, make_template, preprocess_templates
from .structure import MatchMap, MatchPair, StructureResult, hausdorff, match_strokes, structure_metrics
from .technique import TechniqueResult, assess_direction, assess_order, path_distance
from .precision import PrecisionResult, assess_edit, assess_length_closeness, assess_speed

__version__ = "0.1.0"
