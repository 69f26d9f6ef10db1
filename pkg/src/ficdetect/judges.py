"""Human-judge machinery: quiz construction, scoring, and the one-sample
one-tailed t-test used to bound the judges' true accuracy."""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from .corpus import AI, HUMAN, Dataset
from .errors import (IncompleteAnswers, InsufficientItems, TooFewScores,
                     ZeroVariance)
from .stats import sample_mean_sd, student_t_cdf, student_t_ppf

DEFAULT_QUIZ_SIZE = 10


@dataclass(frozen=True)
class QuizItem:
    item_id: str
    text: str
    true_label: str


@dataclass(frozen=True)
class Quiz:
    quiz_id: str
    items: tuple[QuizItem, ...]
    seed: int

    @property
    def size(self) -> int:
        return len(self.items)

    def answer_key(self) -> dict[str, str]:
        return {it.item_id: it.true_label for it in self.items}

    def respondent_payload(self) -> dict:
        """What a respondent may see: item ids and texts, never labels."""
        return {"quiz_id": self.quiz_id,
                "items": [{"item_id": it.item_id, "text": it.text}
                          for it in self.items]}


@dataclass(frozen=True)
class JudgeResult:
    respondent_id: str
    quiz_id: str
    answers: dict[str, str]
    score: int
    completed_at: str


@dataclass(frozen=True)
class TTestResult:
    n: int
    mean: float
    sd: float                  # sample standard deviation (n-1)
    mu0: float
    t: float
    df: int
    p_one_tailed: float
    ci_upper_one_sided: float  # 95% upper bound on the true mean
    as_proportion: float       # bound divided by the quiz size


def build_quiz(dataset: Dataset, size: int = DEFAULT_QUIZ_SIZE,
               seed: int = 0, quiz_id: str | None = None) -> Quiz:
    """Draw a stratified half-human / half-AI sample and shuffle it."""
    if size < 2:
        raise ValueError("quiz size must be at least 2")
    per_label = {HUMAN: size // 2, AI: size - size // 2}
    pools = {lab: [e for e in dataset.excerpts if e.label == lab]
             for lab in (HUMAN, AI)}
    for lab, want in per_label.items():
        if len(pools[lab]) < want:
            raise InsufficientItems(
                f"need {want} {lab!r} excerpts, dataset has {len(pools[lab])}")
    rng = random.Random(seed)
    chosen = []
    for lab in (HUMAN, AI):
        chosen.extend(rng.sample(pools[lab], per_label[lab]))
    rng.shuffle(chosen)
    items = tuple(QuizItem(item_id=e.excerpt_id, text=e.text, true_label=e.label)
                  for e in chosen)
    return Quiz(quiz_id=quiz_id or f"quiz-{dataset.name}-{seed}",
                items=items, seed=seed)


def score_result(quiz: Quiz, answers: dict[str, str], respondent_id: str,
                 completed_at: str | None = None) -> JudgeResult:
    """Count correct guesses; every quiz item must be answered."""
    missing = [it.item_id for it in quiz.items if it.item_id not in answers]
    if missing:
        raise IncompleteAnswers(missing)
    key = quiz.answer_key()
    score = sum(1 for item_id, truth in key.items() if answers[item_id] == truth)
    return JudgeResult(
        respondent_id=respondent_id,
        quiz_id=quiz.quiz_id,
        answers={it.item_id: answers[it.item_id] for it in quiz.items},
        score=score,
        completed_at=completed_at or datetime.now(timezone.utc).isoformat(timespec="seconds"))


def t_test_upper(scores: Sequence[float], mu0: float,
                 quiz_size: int = DEFAULT_QUIZ_SIZE) -> TTestResult:
    """One-sample, one-tailed t-test of mean < mu0 with a 95% upper bound.

    t = (mean - mu0) / (sd / sqrt(n)); the p-value is the lower tail of
    the Student-t CDF at t with n-1 degrees of freedom; the one-sided 95%
    upper confidence bound is mean + t_{0.95,df} * sd / sqrt(n).
    """
    n = len(scores)
    if n < 2:
        raise TooFewScores("need at least two scores")
    mean, sd = sample_mean_sd(scores)
    if sd == 0.0:
        raise ZeroVariance("all scores identical")
    df = n - 1
    se = sd / math.sqrt(n)
    t = (mean - mu0) / se
    p = student_t_cdf(t, df)
    upper = mean + student_t_ppf(0.95, df) * se
    return TTestResult(n=n, mean=mean, sd=sd, mu0=mu0, t=t, df=df,
                       p_one_tailed=p, ci_upper_one_sided=upper,
                       as_proportion=upper / quiz_size)


# ---------------------------------------------------------------------------
# Files: quiz export, answer key, append-only results store
# ---------------------------------------------------------------------------

def export_quiz(quiz: Quiz, payload_path: str | Path, key_path: str | Path) -> None:
    """Write the respondent-facing payload and the answer key separately."""
    payload_path, key_path = Path(payload_path), Path(key_path)
    payload_path.parent.mkdir(parents=True, exist_ok=True)
    key_path.parent.mkdir(parents=True, exist_ok=True)
    payload_path.write_text(json.dumps(quiz.respondent_payload(), indent=2,
                                       ensure_ascii=False), encoding="utf-8")
    key_path.write_text(json.dumps({"quiz_id": quiz.quiz_id, "seed": quiz.seed,
                                    "key": quiz.answer_key()},
                                   indent=2, ensure_ascii=False), encoding="utf-8")


def load_quiz(payload_path: str | Path, key_path: str | Path) -> Quiz:
    payload = json.loads(Path(payload_path).read_text(encoding="utf-8"))
    key_doc = json.loads(Path(key_path).read_text(encoding="utf-8"))
    if payload["quiz_id"] != key_doc["quiz_id"]:
        raise ValueError("quiz payload and key belong to different quizzes")
    key = key_doc["key"]
    items = tuple(QuizItem(item_id=it["item_id"], text=it["text"],
                           true_label=key[it["item_id"]])
                  for it in payload["items"])
    return Quiz(quiz_id=payload["quiz_id"], items=items,
                seed=key_doc.get("seed", 0))


def append_result(result: JudgeResult, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps({
            "respondent_id": result.respondent_id,
            "quiz_id": result.quiz_id,
            "answers": result.answers,
            "score": result.score,
            "completed_at": result.completed_at,
        }, ensure_ascii=False) + "\n")


def read_results(path: str | Path) -> list[JudgeResult]:
    path = Path(path)
    if not path.exists():
        return []
    out = []
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(JudgeResult(**json.loads(line)))
    return out
