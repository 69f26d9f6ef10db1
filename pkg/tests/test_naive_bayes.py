"""The exact-arithmetic oracle: posterior probabilities recomputed with
Fraction rationals, so every comparison is against a zero-rounding path."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ficdetect.errors import SingleClassTraining
from ficdetect.features import DocTermMatrix, build_vocabulary, vectorize
from ficdetect.models import nb_predict, nb_train
from ficdetect.models.base import AI_IDX, HUMAN_IDX, LABELS


def exact_score_ai(train_rows, train_labels, doc_counts, alpha: Fraction):
    """Posterior P(ai | doc) in exact rational arithmetic."""
    V = len(train_rows[0])
    joint = {}
    n = len(train_labels)
    for label in LABELS:
        rows = [r for r, l in zip(train_rows, train_labels) if l == label]
        token_counts = [sum(r[j] for r in rows) for j in range(V)]
        total = sum(token_counts)
        prior = Fraction(len(rows), n)
        prob = prior
        for j, c in enumerate(doc_counts):
            if c:
                p_token = (token_counts[j] + alpha) / (total + alpha * V)
                prob *= p_token ** c
        joint[label] = prob
    return joint["ai"] / (joint["ai"] + joint["human"])


def test_worked_example_alpha_one():
    # classes: human = "aa bb", ai = "aa cc"; V = 3; alpha = 1
    vocab = build_vocabulary(["aa bb", "aa cc"])
    X = vectorize(["aa bb", "aa cc"], vocab)
    model = nb_train(X, ["human", "ai"], alpha=1.0)
    probs = np.exp(model.log_likelihoods)
    bb = vocab.index["bb"]
    assert probs[HUMAN_IDX, bb] == pytest.approx(0.4)
    assert probs[AI_IDX, bb] == pytest.approx(0.2)

    doc = vectorize(["bb"], vocab)
    pred = nb_predict(model, doc)[0]
    assert pred.label == "human"
    assert pred.score_ai == pytest.approx(1 / 3)


def test_empty_doc_falls_back_to_priors_and_tie_goes_to_ai():
    vocab = build_vocabulary(["aa bb", "aa cc"])
    X = vectorize(["aa bb", "aa cc"], vocab)
    model = nb_train(X, ["human", "ai"], alpha=1.0)
    pred = nb_predict(model, vectorize([""], vocab))[0]
    assert pred.score_ai == pytest.approx(0.5)
    assert pred.label == "ai"


def test_symmetric_training_bags_give_identical_rows():
    X = DocTermMatrix.from_dense([[2, 1, 0], [2, 1, 0]])
    model = nb_train(X, ["human", "ai"], alpha=0.7)
    assert np.allclose(model.log_likelihoods[0], model.log_likelihoods[1])


def test_single_class_rejected():
    X = DocTermMatrix.from_dense([[1, 0], [0, 1]])
    with pytest.raises(SingleClassTraining):
        nb_train(X, ["human", "human"])


def test_likelihoods_normalize():
    rng = np.random.default_rng(0)
    for _ in range(10):
        n, V = rng.integers(2, 12), rng.integers(2, 9)
        counts = rng.integers(0, 5, size=(n, V))
        labels = ["human", "ai"] + [LABELS[i] for i in rng.integers(0, 2, n - 2)]
        model = nb_train(DocTermMatrix.from_dense(counts), labels,
                         alpha=float(rng.uniform(0.1, 2.0)))
        sums = np.exp(model.log_likelihoods).sum(axis=1)
        assert np.allclose(sums, 1.0, atol=1e-9)


def test_matches_exact_oracle_on_small_docs():
    train_rows = [[2, 0, 1, 0], [0, 1, 0, 0], [1, 1, 0, 2], [0, 0, 3, 1]]
    train_labels = ["human", "human", "ai", "ai"]
    X = DocTermMatrix.from_dense(train_rows)
    alpha = Fraction(7, 10)
    model = nb_train(X, train_labels, alpha=0.7)

    docs = [[0, 0, 0, 0], [1, 0, 0, 0], [2, 1, 0, 3], [5, 5, 5, 5], [0, 2, 0, 0]]
    preds = nb_predict(model, DocTermMatrix.from_dense(docs))
    for doc, pred in zip(docs, preds):
        expected = float(exact_score_ai(train_rows, train_labels, doc, alpha))
        assert pred.score_ai == pytest.approx(expected, abs=1e-9)


def test_count_scaling_preserves_argmax_with_equal_priors():
    rng = np.random.default_rng(1)
    train = rng.integers(0, 4, size=(8, 5))
    labels = ["human"] * 4 + ["ai"] * 4
    model = nb_train(DocTermMatrix.from_dense(train), labels, alpha=0.7)
    for _ in range(25):
        doc = rng.integers(0, 4, size=(1, 5))
        if doc.sum() == 0:
            continue
        for k in (2, 3, 7):
            base = nb_predict(model, DocTermMatrix.from_dense(doc))[0]
            scaled = nb_predict(model, DocTermMatrix.from_dense(doc * k))[0]
            assert base.label == scaled.label


def test_predict_is_pure():
    X = DocTermMatrix.from_dense([[1, 2], [3, 0]])
    model = nb_train(X, ["human", "ai"], alpha=0.7)
    doc = DocTermMatrix.from_dense([[2, 2]])
    first = nb_predict(model, doc)
    second = nb_predict(model, doc)
    assert first == second


count_rows = st.lists(
    st.lists(st.integers(min_value=0, max_value=4), min_size=3, max_size=3),
    min_size=2, max_size=8)


@settings(max_examples=40, deadline=None)
@given(count_rows, st.integers(min_value=1, max_value=19))
def test_oracle_agreement_property(rows, alpha_tenths):
    labels = ["human" if i % 2 == 0 else "ai" for i in range(len(rows))]
    alpha = Fraction(alpha_tenths, 10)
    model = nb_train(DocTermMatrix.from_dense(rows), labels,
                     alpha=alpha_tenths / 10)
    doc = rows[0]
    pred = nb_predict(model, DocTermMatrix.from_dense([doc]))[0]
    expected = float(exact_score_ai(rows, labels, doc, alpha))
    assert pred.score_ai == pytest.approx(expected, abs=1e-9)
