"""Reference implementations of the four comparison classifiers.

These are deliberately simple: full-batch gradient descent for logistic
regression, mini-batch Pegasos for the hinge-loss linear SVM, a Gini
decision tree over small count thresholds, and a bootstrap forest of such
trees.  They exist to rank models on the same features, not to chase
their tuned counterparts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from ..features import DocTermMatrix
from .base import (Prediction, labels_to_array, predictions_from_scores,
                   require_both_classes)

BASELINE_KINDS = ("logistic_regression", "linear_svm", "decision_tree",
                  "random_forest")

# Counts in ~100-word excerpts rarely exceed 3 for a single token, so the
# tree only considers these split thresholds.
_TREE_THRESHOLDS = (0.5, 1.5, 2.5)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class LogisticRegressionBaseline:
    def __init__(self, learning_rate: float = 0.1, iterations: int = 500,
                 l2: float = 5e-4):
        self.learning_rate = learning_rate
        self.iterations = iterations
        self.l2 = l2
        self.w: np.ndarray | None = None
        self.b = 0.0

    def fit(self, X: DocTermMatrix, y: Sequence[str]) -> "LogisticRegressionBaseline":
        y_idx = labels_to_array(y)
        require_both_classes(y_idx)
        csr = X.to_csr()
        n = X.n_docs
        self.w = np.zeros(X.vocab_size)
        self.b = 0.0
        target = y_idx.astype(np.float64)
        for _ in range(self.iterations):
            p = _sigmoid(np.asarray(csr @ self.w) + self.b)
            err = (p - target) / n
            self.w -= self.learning_rate * (np.asarray(csr.T @ err) + self.l2 * self.w)
            self.b -= self.learning_rate * err.sum()
        return self

    def predict_scores(self, X: DocTermMatrix) -> np.ndarray:
        return _sigmoid(np.asarray(X.to_csr() @ self.w) + self.b)

    def predict(self, X: DocTermMatrix) -> list[Prediction]:
        return predictions_from_scores(self.predict_scores(X))


class LinearSVMBaseline:
    """Full-batch subgradient descent on the L2-regularized hinge loss."""

    def __init__(self, l2: float = 5e-4, learning_rate: float = 0.1,
                 iterations: int = 500, seed: int = 0):
        self.l2 = l2
        self.learning_rate = learning_rate
        self.iterations = iterations
        self.seed = seed
        self.w: np.ndarray | None = None
        self.b = 0.0

    def fit(self, X: DocTermMatrix, y: Sequence[str]) -> "LinearSVMBaseline":
        y_idx = labels_to_array(y)
        require_both_classes(y_idx)
        csr = X.to_csr()
        n = X.n_docs
        signs = np.where(y_idx == 1, 1.0, -1.0)
        self.w = np.zeros(X.vocab_size)
        self.b = 0.0
        for _ in range(self.iterations):
            margins = signs * (np.asarray(csr @ self.w) + self.b)
            viol = margins < 1.0
            grad_w = self.l2 * self.w
            grad_b = 0.0
            if viol.any():
                grad_w -= np.asarray(csr[viol].T @ signs[viol]) / n
                grad_b -= signs[viol].sum() / n
            self.w -= self.learning_rate * grad_w
            self.b -= self.learning_rate * grad_b
        return self

    def predict_scores(self, X: DocTermMatrix) -> np.ndarray:
        margin = np.asarray(X.to_csr() @ self.w) + self.b
        return _sigmoid(margin)

    def predict(self, X: DocTermMatrix) -> list[Prediction]:
        return predictions_from_scores(self.predict_scores(X))


@dataclass
class _TreeNode:
    feature: int = -1
    threshold: float = 0.0
    left: "._TreeNode | None" = None
    right: "._TreeNode | None" = None
    p_ai: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.feature < 0


def _gini_pair(pos: np.ndarray, total: np.ndarray) -> np.ndarray:
    """Gini impurity per entry; empty partitions return 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(total > 0, pos / np.maximum(total, 1), 0.0)
    return 2.0 * p * (1.0 - p)


class DecisionTreeBaseline:
    """Gini tree over count thresholds.  With features_per_split set, each
    node considers only a random feature subset (the forest's trees)."""

    def __init__(self, max_depth: int = 30, min_samples_split: int = 2,
                 features_per_split: int | None = None, seed: int = 0):
        self.max_depth = max_depth
        self.min_samples_split = min_samples_split
        self.features_per_split = features_per_split
        self.seed = seed
        self.root: _TreeNode | None = None

    def fit(self, X: DocTermMatrix, y: Sequence[str]) -> "DecisionTreeBaseline":
        y_idx = labels_to_array(y)
        require_both_classes(y_idx)
        csr = X.to_csr()
        rng = np.random.Generator(np.random.PCG64(self.seed))
        self.root = self._build(csr, y_idx.astype(np.float64), depth=0, rng=rng)
        return self

    def _build(self, Xn: sparse.csr_matrix, yn: np.ndarray, depth: int,
               rng: np.random.Generator) -> _TreeNode:
        n = Xn.shape[0]
        pos = yn.sum()
        p_ai = pos / n
        node = _TreeNode(p_ai=p_ai)
        if (depth >= self.max_depth or n < self.min_samples_split
                or pos == 0 or pos == n):
            return node

        V = Xn.shape[1]
        if self.features_per_split is not None and self.features_per_split < V:
            allowed = np.zeros(V, dtype=bool)
            allowed[rng.choice(V, size=self.features_per_split, replace=False)] = True
        else:
            allowed = None

        parent_gini = 2.0 * p_ai * (1.0 - p_ai)
        best = (0.0, -1, 0.0)  # (gain, feature, threshold)
        for thr in _TREE_THRESHOLDS:
            gt = Xn > thr
            n_right = np.asarray(gt.sum(axis=0)).ravel()
            pos_right = np.asarray(gt.T @ yn).ravel()
            n_left = n - n_right
            pos_left = pos - pos_right
            valid = (n_right > 0) & (n_left > 0)
            if allowed is not None:
                valid &= allowed
            if not valid.any():
                continue
            weighted = (n_left * _gini_pair(pos_left, n_left)
                        + n_right * _gini_pair(pos_right, n_right)) / n
            gain = np.where(valid, parent_gini - weighted, -np.inf)
            f = int(np.argmax(gain))
            if gain[f] > best[0] + 1e-12:
                best = (float(gain[f]), f, thr)

        if best[1] < 0:
            return node

        node.feature, node.threshold = best[1], best[2]
        col = Xn[:, [node.feature]].toarray().ravel()
        right_mask = col > node.threshold
        node.left = self._build(Xn[~right_mask], yn[~right_mask], depth + 1, rng)
        node.right = self._build(Xn[right_mask], yn[right_mask], depth + 1, rng)
        return node

    def predict_scores(self, X: DocTermMatrix) -> np.ndarray:
        csr = X.to_csr()
        out = np.empty(X.n_docs)
        for i in range(X.n_docs):
            row = csr[i].toarray().ravel()
            node = self.root
            while not node.is_leaf:
                node = node.right if row[node.feature] > node.threshold else node.left
            out[i] = node.p_ai
        return out

    def predict(self, X: DocTermMatrix) -> list[Prediction]:
        return predictions_from_scores(self.predict_scores(X))


class RandomForestBaseline:
    """Bootstrap aggregation of Gini trees with per-split feature sampling."""

    def __init__(self, n_trees: int = 50, max_depth: int = 30, seed: int = 0):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.seed = seed
        self.trees: list[DecisionTreeBaseline] = []

    def fit(self, X: DocTermMatrix, y: Sequence[str]) -> "RandomForestBaseline":
        y_arr = labels_to_array(y)
        require_both_classes(y_arr)
        labels = np.asarray(y, dtype=object)
        csr = X.to_csr()
        n, V = csr.shape
        k = max(1, int(np.sqrt(V)))
        rng = np.random.Generator(np.random.PCG64(self.seed))
        self.trees = []
        while len(self.trees) < self.n_trees:
            rows = rng.integers(0, n, size=n)
            boot_y = labels[rows]
            if len(set(boot_y.tolist())) < 2:
                continue  # degenerate bootstrap; draw again
            boot = csr[rows]
            boot_dtm = DocTermMatrix(boot.indptr, boot.indices,
                                     boot.data.astype(np.int64), V)
            tree = DecisionTreeBaseline(
                max_depth=self.max_depth, features_per_split=k,
                seed=int(rng.integers(0, 2**31)))
            self.trees.append(tree.fit(boot_dtm, boot_y))
        return self

    def predict_scores(self, X: DocTermMatrix) -> np.ndarray:
        total = np.zeros(X.n_docs)
        for tree in self.trees:
            total += tree.predict_scores(X)
        return total / max(len(self.trees), 1)

    def predict(self, X: DocTermMatrix) -> list[Prediction]:
        return predictions_from_scores(self.predict_scores(X))


def make_baseline(kind: str, seed: int = 0):
    if kind == "logistic_regression":
        return LogisticRegressionBaseline()
    if kind == "linear_svm":
        return LinearSVMBaseline(seed=seed)
    if kind == "decision_tree":
        return DecisionTreeBaseline()
    if kind == "random_forest":
        return RandomForestBaseline(seed=seed)
    raise ValueError(f"unknown baseline kind {kind!r}")


def baseline_train_predict(kind: str, X: DocTermMatrix, y: Sequence[str],
                           X_eval: DocTermMatrix | None = None,
                           seed: int = 0) -> list[Prediction]:
    """Train a reference model and predict on X_eval (default: X itself)."""
    model = make_baseline(kind, seed=seed).fit(X, y)
    return model.predict(X_eval if X_eval is not None else X)
