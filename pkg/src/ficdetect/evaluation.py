"""Dataset splitting, metric computation, and experiment orchestration.

Split arithmetic: with N excerpts, the evaluation pool is floor(0.8 * N);
the training part is round(0.7 * pool) with half-up rounding; the rest of
the pool is the test set and the held-back 20% is the validation
("unseen") set.  Selection is seeded, uniform, and stratified by label.

In pair_aware mode a rewrite and its source excerpt always land in the
same split, which prevents content leakage between train and test; exact
split sizes then hold at the pair level rather than the excerpt level.
"""

from __future__ import annotations

import json
import math
import random
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import AI, HUMAN, ORIGIN_REWRITE, Dataset, Excerpt, read_jsonl
from .errors import FicdetectError, TooSmall
from .features import DocTermMatrix, Vocabulary, build_vocabulary, vectorize
from .models import (MLPConfig, Prediction, make_baseline, mlp_predict,
                     mlp_train, nb_predict, nb_train)

PAIR_AWARE = "pair_aware"
NAIVE = "naive"

CSV_HEADER = "dataset,model,accuracy,precision,recall,f1,train_s,predict_s"


@dataclass(frozen=True)
class SplitSpec:
    holdout_fraction: float = 0.2
    test_fraction_of_pool: float = 0.3
    seed: int = 0
    pairing_mode: str = PAIR_AWARE

    def __post_init__(self):
        if not 0.0 < self.holdout_fraction < 1.0:
            raise ValueError("holdout_fraction must be in (0, 1)")
        if not 0.0 < self.test_fraction_of_pool < 1.0:
            raise ValueError("test_fraction_of_pool must be in (0, 1)")
        if self.pairing_mode not in (PAIR_AWARE, NAIVE):
            raise ValueError(f"unknown pairing_mode {self.pairing_mode!r}")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def split_sizes(n: int, spec: SplitSpec) -> tuple[int, int, int]:
    """(train, test, validation) sizes for a dataset of n excerpts."""
    pool = math.floor((1.0 - spec.holdout_fraction) * n)
    train = _round_half_up((1.0 - spec.test_fraction_of_pool) * pool)
    test = pool - train
    validation = n - pool
    return train, test, validation


def _apportion(total: int, weights: dict[str, int]) -> dict[str, int]:
    """Largest-remainder division of `total` proportionally to weights."""
    denom = sum(weights.values())
    quotas = {k: total * w / denom for k, w in weights.items()}
    base = {k: math.floor(q) for k, q in quotas.items()}
    leftover = total - sum(base.values())
    order = sorted(weights, key=lambda k: (-(quotas[k] - base[k]), k))
    for k in order[:leftover]:
        base[k] += 1
    return base


def _split_indices_stratified(labels: Sequence[str], spec: SplitSpec,
                              rng: random.Random) -> tuple[list[int], list[int], list[int]]:
    n = len(labels)
    train_n, test_n, val_n = split_sizes(n, spec)
    by_label: dict[str, list[int]] = {}
    for i, lab in enumerate(labels):
        by_label.setdefault(lab, []).append(i)
    class_sizes = {k: len(v) for k, v in by_label.items()}

    pool_alloc = _apportion(train_n + test_n, class_sizes)
    train_alloc = _apportion(train_n, pool_alloc)

    train_idx: list[int] = []
    test_idx: list[int] = []
    val_idx: list[int] = []
    for lab in sorted(by_label):
        idx = by_label[lab]
        rng.shuffle(idx)
        p, t = pool_alloc[lab], train_alloc[lab]
        train_idx.extend(idx[:t])
        test_idx.extend(idx[t:p])
        val_idx.extend(idx[p:])
    return train_idx, test_idx, val_idx


def _split_indices_pair_aware(excerpts: Sequence[Excerpt], spec: SplitSpec,
                              rng: random.Random) -> tuple[list[int], list[int], list[int]]:
    # Group a human excerpt with every rewrite derived from it.
    groups: dict[str, list[int]] = {}
    for i, e in enumerate(excerpts):
        key = e.source_excerpt_id if e.origin == ORIGIN_REWRITE else e.excerpt_id
        groups.setdefault(key, []).append(i)

    pairs: list[list[int]] = []
    singles: dict[str, list[list[int]]] = {HUMAN: [], AI: []}
    for key in sorted(groups):
        members = groups[key]
        labs = {excerpts[i].label for i in members}
        if len(labs) == 2:
            pairs.append(members)
        else:
            singles[labs.pop()].append(members)

    train_idx: list[int] = []
    test_idx: list[int] = []
    val_idx: list[int] = []

    def assign(units: list[list[int]]):
        rng.shuffle(units)
        n_units = len(units)
        if n_units == 0:
            return
        t, s, v = split_sizes(n_units, spec)
        for unit in units[:t]:
            train_idx.extend(unit)
        for unit in units[t:t + s]:
            test_idx.extend(unit)
        for unit in units[t + s:]:
            val_idx.extend(unit)

    assign(pairs)
    assign(singles[HUMAN])
    assign(singles[AI])
    return train_idx, test_idx, val_idx


def split_dataset(ds: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset, Dataset]:
    """Partition a dataset into (train, test, validation) Datasets."""
    n = len(ds.excerpts)
    train_n, test_n, val_n = split_sizes(n, spec)
    if min(train_n, test_n, val_n) < 1:
        raise TooSmall(f"dataset of {n} excerpts leaves an empty split")

    rng = random.Random(spec.seed)
    if spec.pairing_mode == NAIVE:
        idx = _split_indices_stratified([e.label for e in ds.excerpts], spec, rng)
    else:
        idx = _split_indices_pair_aware(ds.excerpts, spec, rng)
    if any(len(part) == 0 for part in idx):
        raise TooSmall("a split came out empty")

    parts = []
    for name_suffix, part in zip(("Train", "Test", "Unseen"), idx):
        parts.append(Dataset(name=f"{ds.name}{name_suffix}",
                             excerpts=[ds.excerpts[i] for i in part],
                             seed=spec.seed, provenance=ds.provenance))
    return parts[0], parts[1], parts[2]


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with 'ai' as the positive class."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def n(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricsSummary:
    accuracy: float
    precision: float
    recall: float
    f1: float


def compute_metrics(y_true: Sequence[str],
                    y_pred: Sequence[str]) -> tuple[MetricsSummary, ConfusionMatrix]:
    """Accuracy / precision / recall / F1 with 'ai' positive.

    Precision, recall and F1 fall back to 0 when their denominator is 0.
    """
    if len(y_true) != len(y_pred) or not y_true:
        raise ValueError("label vectors must be non-empty and equal length")
    tp = fp = fn = tn = 0
    for t, p in zip(y_true, y_pred):
        if p == AI:
            if t == AI:
                tp += 1
            else:
                fp += 1
        else:
            if t == AI:
                fn += 1
            else:
                tn += 1
    cm = ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)
    accuracy = (tp + tn) / cm.n
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return MetricsSummary(accuracy, precision, recall, f1), cm


# ---------------------------------------------------------------------------
# Experiment harness
# ---------------------------------------------------------------------------

@dataclass
class EvalRow:
    dataset_name: str
    model_name: str
    accuracy: float | None = None
    precision: float | None = None
    recall: float | None = None
    f1: float | None = None
    train_seconds: float | None = None
    predict_seconds: float | None = None
    author_scope: str | None = None
    error: str | None = None


@dataclass
class EvalReport:
    rows: list[EvalRow] = field(default_factory=list)

    def csv_text(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            if r.error is not None:
                lines.append(f"{r.dataset_name},{r.model_name},,,,,,")
                continue
            lines.append(
                f"{r.dataset_name},{r.model_name},"
                f"{r.accuracy:.4f},{r.precision:.4f},{r.recall:.4f},{r.f1:.4f},"
                f"{_round_half_up(r.train_seconds)},{_round_half_up(r.predict_seconds)}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path: str | Path) -> None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(self.csv_text(), encoding="utf-8")

    def table_text(self) -> str:
        headers = ["dataset", "model", "acc", "prec", "rec", "f1",
                   "train_s", "pred_s", ""]
        data = []
        for r in self.rows:
            if r.error is not None:
                data.append([r.dataset_name, r.model_name, "-", "-", "-", "-",
                             "-", "-", f"FAILED: {r.error}"])
            else:
                note = r.author_scope or ""
                data.append([r.dataset_name, r.model_name,
                             f"{r.accuracy:.4f}", f"{r.precision:.4f}",
                             f"{r.recall:.4f}", f"{r.f1:.4f}",
                             str(_round_half_up(r.train_seconds)),
                             str(_round_half_up(r.predict_seconds)), note])
        widths = [max(len(h), *(len(row[i]) for row in data)) if data else len(h)
                  for i, h in enumerate(headers)]
        fmt = "  ".join(f"{{:<{w}}}" for w in widths)
        lines = [fmt.format(*headers), fmt.format(*("-" * w for w in widths))]
        lines += [fmt.format(*row) for row in data]
        return "\n".join(lines)


@contextmanager
def stopwatch(sink: dict, key: str):
    """Record wall-clock seconds of the enclosed block into sink[key]."""
    start = time.perf_counter()
    try:
        yield
    finally:
        sink[key] = time.perf_counter() - start


class ModelRunner:
    """Uniform train/predict wrapper over every model kind."""

    def __init__(self, name: str, kind: str, options: dict):
        self.name = name
        self.kind = kind
        self.options = dict(options)
        self._model = None
        self._baseline = None

    def train(self, X: DocTermMatrix, y: Sequence[str], vocab: Vocabulary) -> None:
        if self.kind == "nb":
            self._model = nb_train(X, y, alpha=self.options.get("alpha", 0.7),
                                   vocab=vocab)
        elif self.kind == "mlp":
            allowed = {k: v for k, v in self.options.items()
                       if k in MLPConfig.__dataclass_fields__}
            self._model = mlp_train(X, y, MLPConfig(**allowed), vocab=vocab)
        else:
            self._baseline = make_baseline(self.kind,
                                           seed=self.options.get("seed", 0))
            self._baseline.fit(X, y)

    def predict(self, X: DocTermMatrix) -> list[Prediction]:
        if self.kind == "nb":
            return nb_predict(self._model, X)
        if self.kind == "mlp":
            return mlp_predict(self._model, X)
        return self._baseline.predict(X)

    @property
    def model(self):
        return self._model if self._model is not None else self._baseline


def _load_manifest_obj(manifest, base_dir: str | Path) -> dict:
    if isinstance(manifest, (str, Path)):
        with Path(manifest).open("r", encoding="utf-8") as fh:
            return json.load(fh)
    return manifest


def _resolve_eval_excerpts(entry: dict, splits: dict[str, Dataset],
                           base_dir: Path) -> list[Excerpt]:
    if "split" in entry:
        key = entry["split"]
        if key not in splits:
            raise FicdetectError(f"unknown split {key!r}")
        return splits[key].excerpts
    if "path" in entry:
        return read_jsonl(base_dir / entry["path"])
    raise FicdetectError(f"eval dataset {entry.get('name')!r} has no split or path")


def run_experiment(manifest, base_dir: str | Path = ".") -> EvalReport:
    """Train every model on every training set and evaluate all datasets.

    The manifest carries training_sets (name -> JSONL path), models
    (name/kind/hyperparameters), eval_datasets (split references or
    paths), and the split spec.  A failing row is marked and the run
    continues.  Deterministic given the seeds in the manifest.
    """
    base_dir = Path(base_dir)
    m = _load_manifest_obj(manifest, base_dir)
    spec = SplitSpec(**m.get("split", {}))
    report = EvalReport()
    multiple_sets = len(m["training_sets"]) > 1

    for set_name, set_path in m["training_sets"].items():
        try:
            full = Dataset(name=set_name, excerpts=read_jsonl(base_dir / set_path),
                           seed=spec.seed)
            train_ds, test_ds, val_ds = split_dataset(full, spec)
            splits = {"train": train_ds, "test": test_ds, "validation": val_ds}
            vocab = build_vocabulary(e.text for e in train_ds.excerpts)
            X_train = vectorize([e.text for e in train_ds.excerpts], vocab)
            y_train = [e.label for e in train_ds.excerpts]
        except (FicdetectError, OSError, ValueError) as exc:
            for model_spec in m["models"]:
                for entry in m["eval_datasets"]:
                    report.rows.append(EvalRow(
                        dataset_name=entry["name"],
                        model_name=_row_model_name(model_spec["name"], set_name,
                                                   multiple_sets),
                        error=f"training set {set_name}: {exc}"))
            continue

        for model_spec in m["models"]:
            runner = ModelRunner(model_spec["name"], model_spec["kind"],
                                 {k: v for k, v in model_spec.items()
                                  if k not in ("name", "kind")})
            row_model = _row_model_name(runner.name, set_name, multiple_sets)
            timings: dict[str, float] = {}
            try:
                with stopwatch(timings, "train"):
                    runner.train(X_train, y_train, vocab)
            except (FicdetectError, ValueError) as exc:
                for entry in m["eval_datasets"]:
                    report.rows.append(EvalRow(dataset_name=entry["name"],
                                               model_name=row_model,
                                               error=str(exc)))
                continue

            for entry in m["eval_datasets"]:
                row = EvalRow(dataset_name=entry["name"], model_name=row_model,
                              author_scope=entry.get("author"))
                try:
                    excerpts = _resolve_eval_excerpts(entry, splits, base_dir)
                    X_eval = vectorize([e.text for e in excerpts], vocab)
                    with stopwatch(timings, "predict"):
                        preds = runner.predict(X_eval)
                    summary, _ = compute_metrics([e.label for e in excerpts],
                                                 [p.label for p in preds])
                    row.accuracy = summary.accuracy
                    row.precision = summary.precision
                    row.recall = summary.recall
                    row.f1 = summary.f1
                    row.train_seconds = timings["train"]
                    row.predict_seconds = timings["predict"]
                except (FicdetectError, OSError, ValueError) as exc:
                    row.error = str(exc)
                report.rows.append(row)
    return report


def _row_model_name(model_name: str, set_name: str, multiple_sets: bool) -> str:
    return f"{model_name} ({set_name})" if multiple_sets else model_name


def generalisation_run(manifest, base_dir: str | Path = ".") -> EvalReport:
    """Evaluate trained models on novels absent from training.

    Same reporting as run_experiment; every eval dataset must carry an
    "author" flag of same_author or cross_author.
    """
    m = _load_manifest_obj(manifest, base_dir)
    for entry in m["eval_datasets"]:
        if entry.get("author") not in ("same_author", "cross_author"):
            raise ValueError(
                f"dataset {entry.get('name')!r} needs author: same_author|cross_author")
    return run_experiment(m, base_dir)
