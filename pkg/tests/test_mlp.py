import numpy as np
import pytest

from ficdetect.errors import NonFiniteLoss, SingleClassTraining
from ficdetect.features import DocTermMatrix
from ficdetect.models import MLPConfig, mlp_gradient_check, mlp_predict, mlp_train
from ficdetect.models.mlp import _gradients, _init_params


def interleaved_toy():
    # XOR-style: no linear separator over the two count features.
    X = DocTermMatrix.from_dense([[0, 0], [1, 1], [0, 1], [1, 0]])
    y = ["human", "human", "ai", "ai"]
    return X, y


class TestGradientCheck:
    def test_small_random_batches(self):
        rng = np.random.default_rng(0)
        for seed in range(5):
            counts = rng.integers(0, 4, size=(6, 10))
            y = ["human", "ai"] * 3
            err = mlp_gradient_check(MLPConfig(hidden=7, seed=seed),
                                     DocTermMatrix.from_dense(counts), y,
                                     n_params=50, seed=seed)
            assert err <= 1e-4

    def test_zero_network_output_bias_gradient(self):
        params = {"W1": np.zeros((3, 4)), "b1": np.zeros(4),
                  "W2": np.zeros((4, 2)), "b2": np.zeros(2)}
        X = np.zeros((1, 3))
        grads = _gradients(params, X, np.array([1]), l2=0.0)
        # softmax(0) - onehot(ai) = [0.5, -0.5]
        assert np.allclose(grads["b2"], [0.5, -0.5])

    def test_loss_brackets_directional_derivative(self):
        from ficdetect.models.mlp import _loss
        rng = np.random.default_rng(3)
        X = rng.integers(0, 3, size=(5, 6)).astype(float)
        y = np.array([0, 1, 0, 1, 1])
        params = _init_params(6, 4, np.random.default_rng(1))
        g = _gradients(params, X, y, l2=1e-4)["W1"][2, 1]
        h = 1e-5
        params["W1"][2, 1] += h
        up = _loss(params, X, y, l2=1e-4)
        params["W1"][2, 1] -= 2 * h
        down = _loss(params, X, y, l2=1e-4)
        assert down <= min(up, down) <= up or (up - down) / (2 * h) == pytest.approx(g, rel=1e-3)


class TestTraining:
    def test_fits_interleaved_toy(self):
        X, y = interleaved_toy()
        model = mlp_train(X, y, MLPConfig(hidden=155, seed=0, max_epochs=500,
                                          patience=500, batch_size=4))
        preds = mlp_predict(model, X)
        assert [p.label for p in preds] == y

    def test_constant_features_majority_no_crash(self):
        X = DocTermMatrix.from_dense([[1, 1]] * 6)
        y = ["human", "human", "human", "human", "ai", "ai"]
        model = mlp_train(X, y, MLPConfig(hidden=8, seed=0, max_epochs=50))
        preds = mlp_predict(model, X)
        acc = sum(p.label == t for p, t in zip(preds, y)) / len(y)
        assert acc == pytest.approx(4 / 6)

    def test_same_seed_bitwise_identical(self):
        X, y = interleaved_toy()
        cfg = MLPConfig(hidden=12, seed=9, max_epochs=3, patience=100)
        m1 = mlp_train(X, y, cfg)
        m2 = mlp_train(X, y, cfg)
        for k in ("W1", "b1", "W2", "b2"):
            assert np.array_equal(m1.params()[k], m2.params()[k])
        assert m1.loss_history == m2.loss_history
        assert len(m1.loss_history) == 3

    def test_single_class_rejected(self):
        X = DocTermMatrix.from_dense([[1, 0], [0, 1]])
        with pytest.raises(SingleClassTraining):
            mlp_train(X, ["ai", "ai"])

    def test_divergence_reports_epoch(self):
        X, y = interleaved_toy()
        with np.errstate(over="ignore", invalid="ignore"):
            with pytest.raises(NonFiniteLoss) as err:
                mlp_train(X, y, MLPConfig(hidden=4, seed=0, learning_rate=1e200,
                                          max_epochs=10))
        assert err.value.epoch >= 0

    def test_loss_history_recorded_and_early_stop(self):
        X, y = interleaved_toy()
        model = mlp_train(X, y, MLPConfig(hidden=16, seed=1, max_epochs=200,
                                          batch_size=4))
        assert 0 < len(model.loss_history) <= 200
        assert all(np.isfinite(l) for l in model.loss_history)


class TestPredict:
    def test_zero_model_scores_half_everywhere(self):
        X, y = interleaved_toy()
        model = mlp_train(X, y, MLPConfig(hidden=4, seed=0, max_epochs=1))
        for key, arr in model.params().items():
            arr[...] = 0.0
        preds = mlp_predict(model, X)
        assert all(p.score_ai == pytest.approx(0.5) for p in preds)
        assert all(p.label == "ai" for p in preds)  # tie rule

    def test_row_order_invariance(self):
        X, y = interleaved_toy()
        model = mlp_train(X, y, MLPConfig(hidden=8, seed=2, max_epochs=30))
        dense = X.to_dense()
        flipped = DocTermMatrix.from_dense(dense[::-1].copy())
        a = mlp_predict(model, X)
        b = mlp_predict(model, flipped)
        assert [p.score_ai for p in a] == [p.score_ai for p in b][::-1]
