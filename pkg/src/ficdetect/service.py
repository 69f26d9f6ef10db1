"""HTTP service exposing classification and quiz endpoints as JSON.

Routes:
    GET  /health
    POST /classify                      {"text": ...} -> verdict
    GET  /quiz/<id>                     respondent payload, no labels
    POST /quiz/<id>/answers             {"respondent_id", "answers"}
    GET  /quiz/<id>/score/<respondent>  stored score

The model is loaded once at startup and shared read-only across request
threads; quiz submissions serialize through a lock around the append-only
results store.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import judges
from .errors import FicdetectError, IncompleteAnswers
from .features import vectorize
from .models import MLPModel, NBModel, mlp_predict, nb_predict
from .models.persistence import load_model

WARN_MIN_CHARS = 300
WARN_MAX_CHARS = 1200

LENGTH_WARNING = ("input length is outside the 300-1200 character range the "
                  "model was trained on; the verdict may be unreliable")


@dataclass
class ClassifierBundle:
    model: object
    model_id: str
    model_kind: str

    @classmethod
    def from_file(cls, path: str | Path) -> "ClassifierBundle":
        model = load_model(path)
        kind = "nb" if isinstance(model, NBModel) else "mlp"
        if model.vocab is None:
            raise FicdetectError(f"model file {path} carries no vocabulary")
        return cls(model=model, model_id=Path(path).stem, model_kind=kind)

    def classify(self, text: str) -> dict:
        X = vectorize([text], self.model.vocab)
        if self.model_kind == "nb":
            pred = nb_predict(self.model, X)[0]
        else:
            pred = mlp_predict(self.model, X)[0]
        response = {
            "label": pred.label,
            "score_ai": pred.score_ai,
            "model_id": self.model_id,
            "model_kind": self.model_kind,
            "excerpt_char_len": len(text),
        }
        if not WARN_MIN_CHARS <= len(text) <= WARN_MAX_CHARS:
            response["warning"] = LENGTH_WARNING
        return response


@dataclass
class ServiceState:
    classifier: ClassifierBundle | None
    quizzes: dict[str, judges.Quiz]
    results_path: Path
    cors_origin: str = "*"
    _lock: threading.Lock = field(default_factory=threading.Lock)

    def submitted(self, quiz_id: str, respondent_id: str) -> judges.JudgeResult | None:
        for r in judges.read_results(self.results_path):
            if r.quiz_id == quiz_id and r.respondent_id == respondent_id:
                return r
        return None

    def record(self, quiz: judges.Quiz, respondent_id: str,
               answers: dict[str, str]) -> judges.JudgeResult:
        with self._lock:
            if self.submitted(quiz.quiz_id, respondent_id) is not None:
                raise DuplicateSubmission(respondent_id)
            result = judges.score_result(quiz, answers, respondent_id)
            judges.append_result(result, self.results_path)
            return result


class DuplicateSubmission(FicdetectError):
    pass


def load_quiz_dir(quiz_dir: str | Path) -> dict[str, judges.Quiz]:
    """Read every payload/key pair in a directory, keyed by quiz id."""
    quiz_dir = Path(quiz_dir)
    quizzes: dict[str, judges.Quiz] = {}
    if not quiz_dir.is_dir():
        return quizzes
    for payload_path in sorted(quiz_dir.glob("*.quiz.json")):
        key_path = payload_path.with_name(
            payload_path.name.replace(".quiz.json", ".key.json"))
        if key_path.exists():
            quiz = judges.load_quiz(payload_path, key_path)
            quizzes[quiz.quiz_id] = quiz
    return quizzes


_QUIZ_RE = re.compile(r"^/quiz/([^/]+)$")
_ANSWERS_RE = re.compile(r"^/quiz/([^/]+)/answers$")
_SCORE_RE = re.compile(r"^/quiz/([^/]+)/score/([^/]+)$")


class _Handler(BaseHTTPRequestHandler):
    server_version = "ficdetect"
    protocol_version = "HTTP/1.1"

    @property
    def state(self) -> ServiceState:
        return self.server.state  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", self.state.cors_origin)
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, error: str, detail: str = "") -> None:
        self._send_json(status, {"error": error, "detail": detail})

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            raise ValueError(f"invalid JSON body: {exc}") from exc
        if not isinstance(doc, dict):
            raise ValueError("body must be a JSON object")
        return doc

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", self.state.cors_origin)
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/health":
            bundle = self.state.classifier
            self._send_json(200, {
                "status": "ok" if bundle is not None else "degraded",
                "model_id": bundle.model_id if bundle is not None else None})
            return

        m = _QUIZ_RE.match(self.path)
        if m:
            quiz = self.state.quizzes.get(m.group(1))
            if quiz is None:
                self._error(404, "unknown_quiz", m.group(1))
                return
            self._send_json(200, quiz.respondent_payload())
            return

        m = _SCORE_RE.match(self.path)
        if m:
            quiz_id, respondent = m.group(1), m.group(2)
            if quiz_id not in self.state.quizzes:
                self._error(404, "unknown_quiz", quiz_id)
                return
            result = self.state.submitted(quiz_id, respondent)
            if result is None:
                self._error(404, "unknown_respondent", respondent)
                return
            self._send_json(200, {"quiz_id": quiz_id,
                                  "respondent_id": respondent,
                                  "score": result.score,
                                  "quiz_size": self.state.quizzes[quiz_id].size})
            return

        self._error(404, "not_found", self.path)

    def do_POST(self):
        try:
            if self.path == "/classify":
                self._classify()
                return
            m = _ANSWERS_RE.match(self.path)
            if m:
                self._submit_answers(m.group(1))
                return
            self._error(404, "not_found", self.path)
        except ValueError as exc:
            self._error(400, "bad_request", str(exc))

    def _classify(self):
        doc = self._read_body()
        text = doc.get("text", "")
        if not isinstance(text, str) or not text.strip():
            self._error(400, "empty_text", "classify needs a non-empty text field")
            return
        bundle = self.state.classifier
        if bundle is None:
            self._error(503, "model_not_loaded", "start the service with a model file")
            return
        self._send_json(200, bundle.classify(text))

    def _submit_answers(self, quiz_id: str):
        quiz = self.state.quizzes.get(quiz_id)
        if quiz is None:
            self._error(404, "unknown_quiz", quiz_id)
            return
        doc = self._read_body()
        respondent = doc.get("respondent_id")
        answers = doc.get("answers")
        if not respondent or not isinstance(answers, dict):
            self._error(400, "bad_request",
                        "body needs respondent_id and an answers object")
            return
        bad = [k for k, v in answers.items() if v not in ("human", "ai")]
        if bad:
            self._error(400, "bad_request", f"invalid answers for: {', '.join(bad)}")
            return
        try:
            result = self.state.record(quiz, str(respondent), answers)
        except DuplicateSubmission:
            self._error(409, "duplicate_submission",
                        f"respondent {respondent!r} already submitted")
            return
        except IncompleteAnswers as exc:
            self._error(400, "incomplete_answers", str(exc))
            return
        key = quiz.answer_key()
        self._send_json(200, {"quiz_id": quiz_id,
                              "respondent_id": result.respondent_id,
                              "score": result.score,
                              "quiz_size": quiz.size,
                              "correct": {item_id: result.answers[item_id] == truth
                                          for item_id, truth in key.items()}})


def make_server(host: str, port: int, state: ServiceState) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), _Handler)
    server.state = state  # type: ignore[attr-defined]
    return server


def build_state(model_path: str | Path | None, quiz_dir: str | Path | None,
                results_path: str | Path, cors_origin: str = "*") -> ServiceState:
    classifier = (ClassifierBundle.from_file(model_path)
                  if model_path is not None else None)
    quizzes = load_quiz_dir(quiz_dir) if quiz_dir is not None else {}
    return ServiceState(classifier=classifier, quizzes=quizzes,
                        results_path=Path(results_path), cors_origin=cors_origin)
