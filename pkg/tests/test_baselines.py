import numpy as np
import pytest

from ficdetect.errors import SingleClassTraining
from ficdetect.features import DocTermMatrix
from ficdetect.models import (DecisionTreeBaseline, LinearSVMBaseline,
                              LogisticRegressionBaseline, RandomForestBaseline,
                              baseline_train_predict, make_baseline)


def separable_toy():
    # feature 0 high for ai, feature 1 high for human
    rng = np.random.default_rng(0)
    rows, labels = [], []
    for i in range(40):
        if i % 2:
            rows.append([rng.integers(3, 6), rng.integers(0, 2)])
            labels.append("ai")
        else:
            rows.append([rng.integers(0, 2), rng.integers(3, 6)])
            labels.append("human")
    return DocTermMatrix.from_dense(rows), labels


@pytest.mark.parametrize("kind", ["logistic_regression", "linear_svm"])
def test_linear_models_fit_separable_data(kind):
    X, y = separable_toy()
    preds = baseline_train_predict(kind, X, y)
    acc = sum(p.label == t for p, t in zip(preds, y)) / len(y)
    assert acc == 1.0


def test_depth_one_tree_picks_informative_feature():
    # feature 0 is noise, feature 1 separates perfectly at count > 0
    rows = [[1, 0], [0, 0], [1, 0], [0, 0], [1, 1], [0, 1], [1, 1], [0, 2]]
    y = ["human"] * 4 + ["ai"] * 4
    tree = DecisionTreeBaseline(max_depth=1).fit(DocTermMatrix.from_dense(rows), y)
    assert tree.root.feature == 1
    assert tree.root.threshold == 0.5


def test_tree_fits_training_data_exactly_when_unconstrained():
    X, y = separable_toy()
    preds = DecisionTreeBaseline().fit(X, y).predict(X)
    assert all(p.label == t for p, t in zip(preds, y))


def test_forest_is_deterministic_by_seed():
    X, y = separable_toy()
    f1 = RandomForestBaseline(n_trees=10, seed=5).fit(X, y).predict_scores(X)
    f2 = RandomForestBaseline(n_trees=10, seed=5).fit(X, y).predict_scores(X)
    assert np.array_equal(f1, f2)


def test_forest_majority_reasonable():
    X, y = separable_toy()
    preds = RandomForestBaseline(n_trees=20, seed=1).fit(X, y).predict(X)
    acc = sum(p.label == t for p, t in zip(preds, y)) / len(y)
    assert acc >= 0.9


@pytest.mark.parametrize("kind", ["logistic_regression", "linear_svm",
                                  "decision_tree", "random_forest"])
def test_single_class_rejected(kind):
    X = DocTermMatrix.from_dense([[1, 0], [0, 1]])
    with pytest.raises(SingleClassTraining):
        make_baseline(kind).fit(X, ["ai", "ai"])


def test_unknown_kind():
    with pytest.raises(ValueError):
        make_baseline("nearest_prototype")


def test_scores_in_unit_interval():
    X, y = separable_toy()
    for kind in ("logistic_regression", "linear_svm", "decision_tree",
                 "random_forest"):
        preds = baseline_train_predict(kind, X, y)
        assert all(0.0 <= p.score_ai <= 1.0 for p in preds)
