"""HTTP/JSON service: lessons, templates, practice assessment, quiz sessions.

Assessment responses are produced by the exact library serializer, so a
service response is byte-identical to a direct in-process call. Quiz
sessions are held in memory (forward-only cursor); submitted ink and
reports can optionally be appended to a JSON-lines file for later study.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import EmptySketchError, InkParseError, LessonNotFoundError, TemplateNotFoundError
from .ink import parse_events, parse_ink
from .scoring import (
    AssessmentReport,
    ThresholdConfig,
    assess_character,
    quiz_summary,
    report_obj,
    serialize_quiz_report,
    serialize_report,
)
from .store import TemplateStore

STUDENT_HEADER = "X-Student-Id"


@dataclass
class QuizSession:
    """Forward-only quiz over one lesson's characters."""

    session_id: str
    lesson_id: str
    labels: tuple[str, ...]
    cursor: int = 0
    collected: list[AssessmentReport] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def complete(self) -> bool:
        return self.cursor >= len(self.labels)

    @property
    def state(self) -> str:
        return "complete" if self.complete else "in_progress"

    @property
    def current_label(self) -> Optional[str]:
        return None if self.complete else self.labels[self.cursor]


def _error(status: int, message: str, path: Optional[str] = None) -> JSONResponse:
    body: dict = {"error": message}
    if path is not None:
        body["path"] = path
    return JSONResponse(body, status_code=status)


class _Persister:
    """Append-only JSON-lines log of submitted ink plus reports."""

    def __init__(self, directory: Union[str, Path]):
        self.path = Path(directory) / "attempts.jsonl"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def record(self, mode: str, student_id: Optional[str], ink_doc: dict,
               report: AssessmentReport, lesson_id: Optional[str] = None) -> None:
        entry = {
            "mode": mode,
            "studentId": student_id,
            "lessonId": lesson_id,
            "ink": ink_doc,
            "report": report_obj(report),
        }
        line = json.dumps(entry, ensure_ascii=False, separators=(",", ":"))
        with self._lock, open(self.path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()


def create_app(
    store: TemplateStore,
    cfg: Optional[ThresholdConfig] = None,
    persist_dir: Union[str, Path, None] = None,
) -> FastAPI:
    cfg = cfg or ThresholdConfig()
    persister = _Persister(persist_dir) if persist_dir else None
    sessions: dict[str, QuizSession] = {}
    sessions_lock = threading.Lock()

    app = FastAPI(title="kwb", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    def _assess_body(body: bytes):
        """Parse an ink document and assess it; returns (report, ink doc)."""
        text = body.decode("utf-8")
        sketch = parse_ink(text)
        events = parse_events(text)
        report = assess_character(sketch, events, sketch.metadata.label, store, cfg)
        return report, json.loads(text)

    @app.get("/api/lessons")
    def list_lessons():
        return JSONResponse({"lessons": [
            {"id": l.id, "title": l.title, "characters": list(l.character_labels)}
            for l in store.list_lessons()
        ]})

    @app.get("/api/lessons/{lesson_id}")
    def lesson_detail(lesson_id: str):
        try:
            characters = store.lesson_characters(lesson_id)
        except LessonNotFoundError as exc:
            return _error(404, str(exc))
        lesson = next(l for l in store.list_lessons() if l.id == lesson_id)
        return JSONResponse({
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
                for c in characters
            ],
        })

    @app.get("/api/characters/{label}/template")
    def template_detail(label: str):
        try:
            t = store.lookup_template(label)
        except TemplateNotFoundError as exc:
            return _error(404, str(exc))
        return JSONResponse({
            "label": t.label,
            "strokeCount": t.stroke_count,
            "size": t.normalized.size,
            "strokes": [
                {"points": [{"x": p.x, "y": p.y, "t": p.t} for p in st.points]}
                for st in t.normalized.strokes
            ],
        })

    @app.post("/api/assess")
    async def assess(request: Request):
        body = await request.body()
        try:
            report, ink_doc = _assess_body(body)
        except InkParseError as exc:
            return _error(400, str(exc), path=exc.path)
        except EmptySketchError as exc:
            return _error(422, str(exc))
        except TemplateNotFoundError as exc:
            return _error(404, str(exc))
        except UnicodeDecodeError:
            return _error(400, "body is not valid UTF-8", path="$")
        if persister:
            persister.record("practice", request.headers.get(STUDENT_HEADER), ink_doc, report)
        return Response(serialize_report(report), media_type="application/json")

    @app.post("/api/quiz")
    async def start_quiz(request: Request):
        try:
            body = json.loads(await request.body())
            lesson_id = body["lessonId"]
        except (json.JSONDecodeError, KeyError, TypeError, UnicodeDecodeError):
            return _error(400, "body must be JSON with a lessonId field")
        try:
            characters = store.lesson_characters(lesson_id)
        except LessonNotFoundError as exc:
            return _error(404, str(exc))
        session = QuizSession(
            session_id=uuid.uuid4().hex,
            lesson_id=lesson_id,
            labels=tuple(c.label for c in characters),
        )
        with sessions_lock:
            sessions[session.session_id] = session
        return JSONResponse({
            "sessionId": session.session_id,
            "lessonId": lesson_id,
            "state": session.state,
            "cursor": session.cursor,
            "total": len(session.labels),
            "currentLabel": session.current_label,
        }, status_code=201)

    def _get_session(sid: str) -> Optional[QuizSession]:
        with sessions_lock:
            return sessions.get(sid)

    @app.post("/api/quiz/{sid}/submit")
    async def quiz_submit(sid: str, request: Request):
        session = _get_session(sid)
        if session is None:
            return _error(404, f"no quiz session {sid!r}")
        body = await request.body()
        with session.lock:
            if session.complete:
                return _error(409, "quiz already complete")
            expected = session.current_label
            try:
                report, ink_doc = _assess_body(body)
            except InkParseError as exc:
                return _error(400, str(exc), path=exc.path)
            except EmptySketchError as exc:
                return _error(422, str(exc))
            except TemplateNotFoundError as exc:
                return _error(404, str(exc))
            except UnicodeDecodeError:
                return _error(400, "body is not valid UTF-8", path="$")
            if report.label != expected:
                return _error(
                    409,
                    f"out-of-order submission: expected {expected!r}, got {report.label!r}",
                )
            session.collected.append(report)
            session.cursor += 1
            if persister:
                persister.record(
                    "quiz", request.headers.get(STUDENT_HEADER), ink_doc, report,
                    lesson_id=session.lesson_id,
                )
            return JSONResponse({
                "report": report_obj(report),
                "cursor": session.cursor,
                "state": session.state,
                "nextLabel": session.current_label,
            })

    @app.get("/api/quiz/{sid}/summary")
    def quiz_summary_endpoint(sid: str):
        session = _get_session(sid)
        if session is None:
            return _error(404, f"no quiz session {sid!r}")
        with session.lock:
            if not session.complete:
                return _error(409, "quiz not complete yet")
            summary = quiz_summary(session.lesson_id, session.collected)
        return Response(serialize_quiz_report(summary), media_type="application/json")

    return app
