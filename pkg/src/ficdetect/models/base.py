"""Shared classifier plumbing: label order, predictions, the tie rule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import SingleClassTraining

# Column order for all two-class score arrays.
LABELS = ("human", "ai")
HUMAN_IDX = 0
AI_IDX = 1


@dataclass(frozen=True)
class Prediction:
    """A verdict for one document: label plus probability of 'ai'.

    A score of exactly 0.5 resolves to 'ai' so that borderline inputs are
    escalated to human review rather than waved through.
    """

    label: str
    score_ai: float


def predictions_from_scores(score_ai: np.ndarray) -> list[Prediction]:
    return [Prediction(label=LABELS[AI_IDX] if s >= 0.5 else LABELS[HUMAN_IDX],
                       score_ai=float(s))
            for s in score_ai]


def labels_to_array(y: Sequence[str]) -> np.ndarray:
    """Map label strings to {0, 1} with 'ai' as 1; reject unknown labels."""
    arr = np.empty(len(y), dtype=np.int64)
    for i, label in enumerate(y):
        try:
            arr[i] = LABELS.index(label)
        except ValueError:
            raise ValueError(f"unknown label {label!r}") from None
    return arr


def require_both_classes(y: np.ndarray) -> None:
    if np.unique(y).size < 2:
        raise SingleClassTraining("training data contains a single label")


def softmax_pair(scores: np.ndarray) -> np.ndarray:
    """Row-wise softmax over an (n, 2) score array; returns P(ai) per row."""
    shifted = scores - scores.max(axis=1, keepdims=True)
    exp = np.exp(shifted)
    return exp[:, AI_IDX] / exp.sum(axis=1)
