import json

import numpy as np
import pytest

from ficdetect.errors import CorruptFile, VersionMismatch
from ficdetect.features import build_vocabulary, vectorize
from ficdetect.models import (MLPConfig, load_model, mlp_predict, mlp_train,
                              nb_predict, nb_train, save_model)


@pytest.fixture
def trained_pair():
    docs = ["the hound barked at the moor", "a quiet study with a ledger",
            "the engine produced a meticulous report", "observed anomalies in data"]
    labels = ["human", "human", "ai", "ai"]
    vocab = build_vocabulary(docs)
    X = vectorize(docs, vocab)
    nb = nb_train(X, labels, alpha=0.7, vocab=vocab)
    mlp = mlp_train(X, labels, MLPConfig(hidden=6, seed=3, max_epochs=20),
                    vocab=vocab)
    probe = vectorize(["the hound observed the ledger", "quiet moor data"], vocab)
    return nb, mlp, probe


def test_nb_round_trip_identical_posteriors(tmp_path, trained_pair):
    nb, _, probe = trained_pair
    path = tmp_path / "nb.model.json"
    save_model(nb, path)
    loaded = load_model(path)
    orig = [p.score_ai for p in nb_predict(nb, probe)]
    back = [p.score_ai for p in nb_predict(loaded, probe)]
    assert back == pytest.approx(orig, abs=1e-12)
    assert loaded.vocab == nb.vocab
    assert loaded.alpha == nb.alpha


def test_mlp_round_trip_identical_predictions(tmp_path, trained_pair):
    _, mlp, probe = trained_pair
    path = tmp_path / "mlp.model.json"
    save_model(mlp, path)
    loaded = load_model(path)
    orig = [p.score_ai for p in mlp_predict(mlp, probe)]
    back = [p.score_ai for p in mlp_predict(loaded, probe)]
    assert back == orig  # float64 bytes survive exactly
    assert loaded.config == mlp.config


def test_tampered_checksum_rejected(tmp_path, trained_pair):
    nb, _, _ = trained_pair
    path = tmp_path / "nb.model.json"
    save_model(nb, path)
    doc = json.loads(path.read_text())
    doc["config"]["alpha"] = 0.9
    path.write_text(json.dumps(doc))
    with pytest.raises(CorruptFile):
        load_model(path)


def test_future_format_version_rejected(tmp_path, trained_pair):
    nb, _, _ = trained_pair
    path = tmp_path / "nb.model.json"
    save_model(nb, path)
    doc = json.loads(path.read_text())
    doc["format_version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(VersionMismatch):
        load_model(path)


def test_unparseable_file_rejected(tmp_path):
    path = tmp_path / "junk.model.json"
    path.write_text("not json at all {")
    with pytest.raises(CorruptFile):
        load_model(path)


def test_envelope_structure(tmp_path, trained_pair):
    nb, _, _ = trained_pair
    path = tmp_path / "nb.model.json"
    save_model(nb, path)
    doc = json.loads(path.read_text())
    assert set(doc) == {"format_version", "model_kind", "created_at", "vocab",
                        "params", "config", "dataset_fingerprint", "sha256"}
    assert doc["model_kind"] == "nb"
    arr = doc["params"]["log_likelihoods"]
    assert arr["shape"] == [2, len(doc["vocab"])]
    raw = np.frombuffer(__import__("base64").b64decode(arr["data"]), dtype="<f8")
    assert raw.size == 2 * len(doc["vocab"])
