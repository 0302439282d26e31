"""Expert template store: preprocessing, validation, loading, lesson catalog.

On disk a store is one directory holding ``store.json`` (index: lesson
catalog, normalization parameters, content hash) and ``templates/<label>.json``
(raw ink, normalized strokes, cached measures). Files are canonical JSON so
re-running preprocessing over the same input is byte-identical; templates
are hand-authored expert data and stay human-diffable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

from .errors import LessonNotFoundError, StoreError, TemplateNotFoundError
from .ink import (
    Point,
    Sketch,
    Stroke,
    parse_ink,
    serialize_ink,
    sketch_duration,
    stroke_duration,
    stroke_path_length,
)
from .normalize import RESAMPLE_N, SCALE_SIZE, NormalizedSketch, normalize

STORE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class Template:
    label: str
    normalized: NormalizedSketch
    raw: Sketch
    stroke_count: int
    per_stroke_lengths: tuple[float, ...]
    per_stroke_durations: tuple[float, ...]
    total_duration: float


@dataclass(frozen=True)
class VocabularyEntry:
    word: str
    pronunciation: str
    translation: str
    highlighted: bool = False


@dataclass(frozen=True)
class CharacterInfo:
    label: str
    pronunciations: tuple[str, ...] = field(default_factory=tuple)
    translations: tuple[str, ...] = field(default_factory=tuple)
    vocabulary: tuple[VocabularyEntry, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class Lesson:
    id: str
    title: str
    characters: tuple[CharacterInfo, ...]

    @property
    def character_labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.characters)


def make_template(label: str, raw: Sketch, n: int = RESAMPLE_N, size: float = SCALE_SIZE) -> Template:
    """Normalize a raw sketch and cache the measures the metrics need."""
    normalized = normalize(raw, n, size)
    return Template(
        label=label,
        normalized=normalized,
        raw=raw,
        stroke_count=len(raw.strokes),
        per_stroke_lengths=tuple(stroke_path_length(st) for st in normalized.strokes),
        per_stroke_durations=tuple(stroke_duration(st) for st in normalized.strokes),
        total_duration=sketch_duration(raw),
    )


# ---------------------------------------------------------------------------
# Catalog parsing


def _parse_catalog(doc: dict) -> tuple[Lesson, ...]:
    if not isinstance(doc, dict) or "lessons" not in doc:
        raise StoreError("catalog must be an object with a 'lessons' array")
    lessons = []
    for raw_lesson in doc["lessons"]:
        characters = []
        for raw_char in raw_lesson.get("characters", []):
            characters.append(CharacterInfo(
                label=raw_char["label"],
                pronunciations=tuple(raw_char.get("pronunciations", [])),
                translations=tuple(raw_char.get("translations", [])),
                vocabulary=tuple(
                    VocabularyEntry(
                        word=v["word"],
                        pronunciation=v.get("pronunciation", ""),
                        translation=v.get("translation", ""),
                        highlighted=bool(v.get("highlighted", False)),
                    )
                    for v in raw_char.get("vocabulary", [])
                ),
            ))
        lessons.append(Lesson(
            id=raw_lesson["id"],
            title=raw_lesson.get("title", raw_lesson["id"]),
            characters=tuple(characters),
        ))
    return tuple(lessons)


def _catalog_obj(lessons: tuple[Lesson, ...]) -> dict:
    return {"lessons": [
        {
            "id": lesson.id,
            "title": lesson.title,
            "characters": [
                {
                    "label": c.label,
                    "pronunciations": list(c.pronunciations),
                    "translations": list(c.translations),
                    "vocabulary": [
                        {
                            "word": v.word,
                            "pronunciation": v.pronunciation,
                            "translation": v.translation,
                            "highlighted": v.highlighted,
                        }
                        for v in c.vocabulary
                    ],
                }
                for c in lesson.characters
            ],
        }
        for lesson in lessons
    ]}


# ---------------------------------------------------------------------------
# Preprocessing


def _normalized_strokes_obj(ns: NormalizedSketch) -> list:
    return [
        {"points": [{"x": p.x, "y": p.y, "t": p.t} for p in st.points]}
        for st in ns.strokes
    ]


def _template_file_obj(t: Template) -> dict:
    return {
        "label": t.label,
        "strokeCount": t.stroke_count,
        "raw": json.loads(serialize_ink(t.raw)),
        "normalized": {
            "n": t.normalized.n,
            "size": t.normalized.size,
            "degenerate": t.normalized.degenerate,
            "strokes": _normalized_strokes_obj(t.normalized),
        },
        "perStrokeLengths": list(t.per_stroke_lengths),
        "perStrokeDurations": list(t.per_stroke_durations),
        "totalDuration": t.total_duration,
    }


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), indent=None)


def preprocess_templates(
    raw_dir: Union[str, Path],
    catalog_file: Union[str, Path],
    out_dir: Union[str, Path],
    n: int = RESAMPLE_N,
    size: float = SCALE_SIZE,
) -> "TemplateStore":
    """Build a template store from raw expert ink plus a lesson catalog.

    Expects ``<raw_dir>/<label>.json`` for every catalog label. Writing is
    deterministic: the same input yields a byte-identical store.
    """
    raw_dir, out_dir = Path(raw_dir), Path(out_dir)
    catalog_file = Path(catalog_file)
    if not catalog_file.is_file():
        raise StoreError(f"catalog file not found: {catalog_file}")
    try:
        lessons = _parse_catalog(json.loads(catalog_file.read_text(encoding="utf-8")))
    except (KeyError, TypeError, json.JSONDecodeError) as exc:
        raise StoreError(f"malformed catalog {catalog_file}: {exc}") from exc

    labels: list[str] = []
    for lesson in lessons:
        labels.extend(lesson.character_labels)
    duplicates = sorted({l for l in labels if labels.count(l) > 1})
    if duplicates:
        raise StoreError("duplicate catalog labels: " + ", ".join(duplicates))
    missing = sorted(l for l in labels if not (raw_dir / f"{l}.json").is_file())
    if missing:
        raise StoreError("missing raw ink for labels: " + ", ".join(missing))

    templates: dict[str, Template] = {}
    for label in labels:
        path = raw_dir / f"{label}.json"
        try:
            raw = parse_ink(path.read_text(encoding="utf-8"))
        except Exception as exc:
            raise StoreError(f"unparseable ink file {path}: {exc}") from exc
        if raw.metadata.label != label:
            raise StoreError(
                f"{path}: metadata label {raw.metadata.label!r} does not match catalog label {label!r}"
            )
        templates[label] = make_template(label, raw, n, size)

    template_dir = out_dir / "templates"
    template_dir.mkdir(parents=True, exist_ok=True)
    digest = hashlib.sha256()
    for label in sorted(templates):
        text = _dump(_template_file_obj(templates[label]))
        (template_dir / f"{label}.json").write_text(text, encoding="utf-8")
        digest.update(label.encode("utf-8"))
        digest.update(text.encode("utf-8"))

    index = {
        "formatVersion": STORE_FORMAT_VERSION,
        "resampleN": n,
        "scaleSize": size,
        "contentHash": digest.hexdigest(),
        "catalog": _catalog_obj(lessons),
    }
    (out_dir / "store.json").write_text(_dump(index), encoding="utf-8")
    return TemplateStore(lessons, templates, n, size)


# ---------------------------------------------------------------------------
# Loading / serving


def _parse_template_file(doc: dict) -> Template:
    raw = parse_ink(json.dumps(doc["raw"]))
    norm_obj = doc["normalized"]
    strokes = tuple(
        Stroke(tuple(Point(p["x"], p["y"], p["t"]) for p in st["points"]))
        for st in norm_obj["strokes"]
    )
    normalized = NormalizedSketch(
        strokes=strokes,
        source=raw,
        n=norm_obj["n"],
        size=norm_obj["size"],
        degenerate=norm_obj["degenerate"],
    )
    return Template(
        label=doc["label"],
        normalized=normalized,
        raw=raw,
        stroke_count=doc["strokeCount"],
        per_stroke_lengths=tuple(doc["perStrokeLengths"]),
        per_stroke_durations=tuple(doc["perStrokeDurations"]),
        total_duration=doc["totalDuration"],
    )


class TemplateStore:
    """Read-only view over preprocessed templates and the lesson catalog.

    Safe to share across request handlers: nothing mutates after load.
    """

    def __init__(
        self,
        lessons: tuple[Lesson, ...],
        templates: dict[str, Template],
        n: int,
        size: float,
    ):
        self._lessons = {lesson.id: lesson for lesson in lessons}
        self._lesson_order = tuple(lesson.id for lesson in lessons)
        self._templates = dict(templates)
        self.resample_n = n
        self.scale_size = size

    @classmethod
    def load(cls, store_dir: Union[str, Path]) -> "TemplateStore":
        store_dir = Path(store_dir)
        index_path = store_dir / "store.json"
        if not index_path.is_file():
            raise StoreError(f"not a template store (no store.json): {store_dir}")
        index = json.loads(index_path.read_text(encoding="utf-8"))
        if index.get("formatVersion") != STORE_FORMAT_VERSION:
            raise StoreError(f"unsupported store format version in {index_path}")
        lessons = _parse_catalog(index["catalog"])
        templates = {}
        for lesson in lessons:
            for label in lesson.character_labels:
                if label in templates:
                    continue
                path = store_dir / "templates" / f"{label}.json"
                if not path.is_file():
                    raise StoreError(f"store missing template file for {label!r}")
                templates[label] = _parse_template_file(
                    json.loads(path.read_text(encoding="utf-8"))
                )
        return cls(lessons, templates, index["resampleN"], index["scaleSize"])

    def lookup_template(self, label: str) -> Template:
        try:
            return self._templates[label]
        except KeyError:
            raise TemplateNotFoundError(f"no template for character {label!r}") from None

    def list_lessons(self) -> tuple[Lesson, ...]:
        return tuple(self._lessons[i] for i in self._lesson_order)

    def lesson_characters(self, lesson_id: str) -> tuple[CharacterInfo, ...]:
        try:
            return self._lessons[lesson_id].characters
        except KeyError:
            raise LessonNotFoundError(f"no lesson {lesson_id!r}") from None

    def labels(self) -> tuple[str, ...]:
        return tuple(self._templates)
