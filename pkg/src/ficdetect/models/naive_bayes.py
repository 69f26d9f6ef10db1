"""Multinomial Naive Bayes with Lidstone smoothing, written from scratch.

Everything happens in log space.  For label c and token t:

    log_prior(c)         = log(n_c / n)
    log_likelihood(c, t) = log((count(t, c) + alpha) / (total(c) + alpha * V))

and a document scores  log_prior(c) + sum_t count_t * log_likelihood(c, t).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..features import DocTermMatrix, Vocabulary
from .base import (AI_IDX, LABELS, Prediction, labels_to_array,
                   predictions_from_scores, require_both_classes, softmax_pair)

DEFAULT_ALPHA = 0.7


@dataclass
class NBModel:
    """Trained Naive Bayes parameters: log priors and per-label token
    log likelihoods over a fixed vocabulary."""

    alpha: float
    log_priors: np.ndarray        # shape (2,) in LABELS order
    log_likelihoods: np.ndarray   # shape (2, V)
    vocab: Vocabulary | None = None
    dataset_fingerprint: str | None = None

    @property
    def vocab_size(self) -> int:
        return self.log_likelihoods.shape[1]


def nb_train(X: DocTermMatrix, y: Sequence[str], alpha: float = DEFAULT_ALPHA,
             vocab: Vocabulary | None = None) -> NBModel:
    """Fit the smoothed multinomial model from raw counts."""
    if alpha <= 0:
        raise ValueError("alpha must be > 0")
    labels = labels_to_array(y)
    if len(labels) != X.n_docs:
        raise ValueError("label vector does not align with the matrix rows")
    require_both_classes(labels)

    csr = X.to_csr()
    V = X.vocab_size
    log_priors = np.empty(2)
    log_likelihoods = np.empty((2, V))
    n = len(labels)
    for c in range(2):
        mask = labels == c
        log_priors[c] = np.log(mask.sum() / n)
        token_counts = np.asarray(csr[mask].sum(axis=0)).ravel()
        total = token_counts.sum()
        log_likelihoods[c] = np.log(token_counts + alpha) - np.log(total + alpha * V)
    return NBModel(alpha=alpha, log_priors=log_priors,
                   log_likelihoods=log_likelihoods, vocab=vocab)


def nb_log_joint(model: NBModel, X: DocTermMatrix) -> np.ndarray:
    """Per-document unnormalized log posterior, shape (n, 2)."""
    if X.vocab_size != model.vocab_size:
        raise ValueError("matrix was built over a different vocabulary")
    return X.to_csr() @ model.log_likelihoods.T + model.log_priors


def nb_predict(model: NBModel, X: DocTermMatrix) -> list[Prediction]:
    """Posterior verdicts; a document with no known tokens falls back to
    the priors."""
    scores = nb_log_joint(model, X)
    return predictions_from_scores(softmax_pair(scores))
