"""One-hidden-layer perceptron trained with backpropagation, from scratch.

Rectifier hidden layer, 2-way softmax output, cross-entropy loss with an
L2 penalty, mini-batch Adam updates.  Training is deterministic for a
given seed: weight initialization and epoch shuffling use two independent
seeded streams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import sparse

from ..errors import NonFiniteLoss
from ..features import DocTermMatrix, Vocabulary
from .base import (AI_IDX, Prediction, labels_to_array, predictions_from_scores,
                   require_both_classes, softmax_pair)

DEFAULT_HIDDEN = 155


@dataclass(frozen=True)
class MLPConfig:
    hidden: int = DEFAULT_HIDDEN
    seed: int = 0
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    batch_size: int = 200          # effective size is min(batch_size, n)
    max_epochs: int = 200
    l2: float = 1e-4
    tol: float = 1e-4              # early stop: < tol improvement ...
    patience: int = 10             # ... for this many consecutive epochs


@dataclass
class MLPModel:
    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: np.ndarray
    config: MLPConfig
    vocab: Vocabulary | None = None
    loss_history: list[float] = field(default_factory=list)
    dataset_fingerprint: str | None = None

    @property
    def vocab_size(self) -> int:
        return self.W1.shape[0]

    def params(self) -> dict[str, np.ndarray]:
        return {"W1": self.W1, "b1": self.b1, "W2": self.W2, "b2": self.b2}


def _init_params(n_features: int, hidden: int,
                 rng: np.random.Generator) -> dict[str, np.ndarray]:
    """Uniform +/- sqrt(6 / (fan_in + fan_out)) for each layer."""
    bound1 = np.sqrt(6.0 / (n_features + hidden))
    bound2 = np.sqrt(6.0 / (hidden + 2))
    return {
        "W1": rng.uniform(-bound1, bound1, size=(n_features, hidden)),
        "b1": rng.uniform(-bound1, bound1, size=hidden),
        "W2": rng.uniform(-bound2, bound2, size=(hidden, 2)),
        "b2": rng.uniform(-bound2, bound2, size=2),
    }


def _forward(params: dict[str, np.ndarray], X) -> tuple[np.ndarray, np.ndarray]:
    """Returns (hidden pre-activation, class probabilities)."""
    Z1 = np.asarray(X @ params["W1"]) + params["b1"]
    A1 = np.maximum(Z1, 0.0)
    Z2 = A1 @ params["W2"] + params["b2"]
    Z2 = Z2 - Z2.max(axis=1, keepdims=True)
    expZ = np.exp(Z2)
    P = expZ / expZ.sum(axis=1, keepdims=True)
    return Z1, P


def _loss(params: dict[str, np.ndarray], X, y_idx: np.ndarray, l2: float) -> float:
    _, P = _forward(params, X)
    n = len(y_idx)
    ce = -np.log(np.clip(P[np.arange(n), y_idx], 1e-300, None)).mean()
    reg = (l2 / (2.0 * n)) * (np.sum(params["W1"] ** 2) + np.sum(params["W2"] ** 2))
    return float(ce + reg)


def _gradients(params: dict[str, np.ndarray], X, y_idx: np.ndarray,
               l2: float) -> dict[str, np.ndarray]:
    n = len(y_idx)
    Z1, P = _forward(params, X)
    A1 = np.maximum(Z1, 0.0)
    dZ2 = P.copy()
    dZ2[np.arange(n), y_idx] -= 1.0
    dZ2 /= n
    grads = {
        "W2": A1.T @ dZ2 + (l2 / n) * params["W2"],
        "b2": dZ2.sum(axis=0),
    }
    dA1 = dZ2 @ params["W2"].T
    dZ1 = dA1 * (Z1 > 0.0)
    grads["W1"] = np.asarray((X.T @ dZ1)) + (l2 / n) * params["W1"]
    grads["b1"] = dZ1.sum(axis=0)
    return grads


def mlp_train(X: DocTermMatrix, y: Sequence[str], config: MLPConfig = MLPConfig(),
              vocab: Vocabulary | None = None) -> MLPModel:
    """Minimize cross-entropy + L2 with mini-batch Adam.

    Stops early once an epoch's loss has failed to improve on the best
    seen by at least config.tol for config.patience consecutive epochs.
    Raises NonFiniteLoss if training diverges.
    """
    y_idx = labels_to_array(y)
    require_both_classes(y_idx)
    if X.n_docs != len(y_idx):
        raise ValueError("label vector does not align with the matrix rows")

    csr = X.to_csr()
    n = X.n_docs
    batch = min(config.batch_size, n)

    init_seq, shuffle_seq = np.random.SeedSequence(config.seed).spawn(2)
    init_rng = np.random.Generator(np.random.PCG64(init_seq))
    shuffle_rng = np.random.Generator(np.random.PCG64(shuffle_seq))

    params = _init_params(X.vocab_size, config.hidden, init_rng)
    m = {k: np.zeros_like(v) for k, v in params.items()}
    v = {k: np.zeros_like(v) for k, v in params.items()}
    step = 0

    loss_history: list[float] = []
    best_loss = np.inf
    stale_epochs = 0

    for epoch in range(config.max_epochs):
        order = shuffle_rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, batch):
            idx = order[start:start + batch]
            Xb = csr[idx]
            yb = y_idx[idx]
            epoch_loss += _loss(params, Xb, yb, config.l2) * len(idx)
            grads = _gradients(params, Xb, yb, config.l2)
            step += 1
            for key in params:
                m[key] = config.beta1 * m[key] + (1 - config.beta1) * grads[key]
                v[key] = config.beta2 * v[key] + (1 - config.beta2) * grads[key] ** 2
                m_hat = m[key] / (1 - config.beta1 ** step)
                v_hat = v[key] / (1 - config.beta2 ** step)
                params[key] -= config.learning_rate * m_hat / (np.sqrt(v_hat) + config.epsilon)
        epoch_loss /= n
        if not np.isfinite(epoch_loss):
            raise NonFiniteLoss(epoch=epoch, loss=epoch_loss)
        loss_history.append(epoch_loss)

        if epoch_loss > best_loss - config.tol:
            stale_epochs += 1
        else:
            stale_epochs = 0
        if epoch_loss < best_loss:
            best_loss = epoch_loss
        if stale_epochs >= config.patience:
            break

    return MLPModel(W1=params["W1"], b1=params["b1"], W2=params["W2"],
                    b2=params["b2"], config=config, vocab=vocab,
                    loss_history=loss_history)


def mlp_predict(model: MLPModel, X: DocTermMatrix) -> list[Prediction]:
    if X.vocab_size != model.vocab_size:
        raise ValueError("matrix was built over a different vocabulary")
    _, P = _forward(model.params(), X.to_csr())
    return predictions_from_scores(P[:, AI_IDX])


def mlp_gradient_check(config: MLPConfig, X: DocTermMatrix, y: Sequence[str],
                       n_params: int = 50, h: float = 1e-5,
                       seed: int = 0) -> float:
    """Compare analytic gradients with central finite differences.

    Initializes a fresh network from config.seed, evaluates both gradient
    routes on the full batch, and returns the maximum relative error over
    up to n_params randomly sampled parameters.
    """
    y_idx = labels_to_array(y)
    Xd = X.to_dense()
    init_rng = np.random.Generator(np.random.PCG64(
        np.random.SeedSequence(config.seed).spawn(2)[0]))
    params = _init_params(X.vocab_size, config.hidden, init_rng)
    analytic = _gradients(params, Xd, y_idx, config.l2)

    names = sorted(params)
    sizes = [params[k].size for k in names]
    total = sum(sizes)
    rng = np.random.Generator(np.random.PCG64(seed))
    flat_choices = rng.choice(total, size=min(n_params, total), replace=False)

    max_rel = 0.0
    for flat in flat_choices:
        offset = int(flat)
        for name, size in zip(names, sizes):
            if offset < size:
                break
            offset -= size
        target = params[name].reshape(-1)
        orig = target[offset]
        target[offset] = orig + h
        loss_plus = _loss(params, Xd, y_idx, config.l2)
        target[offset] = orig - h
        loss_minus = _loss(params, Xd, y_idx, config.l2)
        target[offset] = orig
        numeric = (loss_plus - loss_minus) / (2.0 * h)
        a = float(analytic[name].reshape(-1)[offset])
        rel = abs(a - numeric) / max(abs(a), abs(numeric), 1e-6)
        max_rel = max(max_rel, rel)
    return max_rel
