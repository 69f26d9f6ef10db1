"""Versioned model files: a JSON envelope with base64 little-endian
float64 parameter arrays and a sha256 integrity checksum."""

from __future__ import annotations

import base64
import dataclasses
import datetime
import hashlib
import json
from pathlib import Path

import numpy as np

from ..errors import CorruptFile, VersionMismatch
from ..features import Vocabulary
from .mlp import MLPConfig, MLPModel
from .naive_bayes import NBModel

FORMAT_VERSION = 1


def _encode_array(arr: np.ndarray) -> dict:
    a = np.ascontiguousarray(arr, dtype="<f8")
    return {"shape": list(a.shape),
            "data": base64.b64encode(a.tobytes()).decode("ascii")}


def _decode_array(obj: dict) -> np.ndarray:
    raw = base64.b64decode(obj["data"])
    arr = np.frombuffer(raw, dtype="<f8").copy()
    return arr.reshape(obj["shape"])


def _canonical(envelope: dict) -> bytes:
    body = {k: v for k, v in envelope.items() if k != "sha256"}
    return json.dumps(body, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True).encode("ascii")


def save_model(model, path: str | Path) -> None:
    """Write an NBModel or MLPModel to a checksummed JSON envelope."""
    if isinstance(model, NBModel):
        kind = "nb"
        params = {"log_priors": _encode_array(model.log_priors),
                  "log_likelihoods": _encode_array(model.log_likelihoods)}
        config = {"alpha": model.alpha}
    elif isinstance(model, MLPModel):
        kind = "mlp"
        params = {name: _encode_array(arr) for name, arr in model.params().items()}
        config = dataclasses.asdict(model.config)
    else:
        raise TypeError(f"cannot persist {type(model).__name__}")

    envelope = {
        "format_version": FORMAT_VERSION,
        "model_kind": kind,
        "created_at": datetime.datetime.now(datetime.timezone.utc)
            .isoformat(timespec="seconds"),
        "vocab": model.vocab.tokens if model.vocab is not None else None,
        "params": params,
        "config": config,
        "dataset_fingerprint": model.dataset_fingerprint,
    }
    envelope["sha256"] = hashlib.sha256(_canonical(envelope)).hexdigest()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(envelope, ensure_ascii=True), encoding="ascii")


def load_model(path: str | Path):
    """Read a model envelope back; verifies version and checksum."""
    try:
        envelope = json.loads(Path(path).read_text(encoding="ascii"))
    except (ValueError, UnicodeDecodeError) as exc:
        raise CorruptFile(f"unparseable model file {path}: {exc}") from exc

    version = envelope.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"model file has format_version {version!r}, "
                              f"expected {FORMAT_VERSION}")
    expected = envelope.get("sha256")
    actual = hashlib.sha256(_canonical(envelope)).hexdigest()
    if expected != actual:
        raise CorruptFile(f"checksum mismatch in {path}")

    try:
        vocab = (Vocabulary(envelope["vocab"])
                 if envelope.get("vocab") is not None else None)
        kind = envelope["model_kind"]
        params = envelope["params"]
        fingerprint = envelope.get("dataset_fingerprint")
        if kind == "nb":
            return NBModel(alpha=envelope["config"]["alpha"],
                           log_priors=_decode_array(params["log_priors"]),
                           log_likelihoods=_decode_array(params["log_likelihoods"]),
                           vocab=vocab, dataset_fingerprint=fingerprint)
        if kind == "mlp":
            return MLPModel(W1=_decode_array(params["W1"]),
                            b1=_decode_array(params["b1"]),
                            W2=_decode_array(params["W2"]),
                            b2=_decode_array(params["b2"]),
                            config=MLPConfig(**envelope["config"]),
                            vocab=vocab, dataset_fingerprint=fingerprint)
        raise CorruptFile(f"unknown model_kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFile(f"malformed model file {path}: {exc}") from exc
