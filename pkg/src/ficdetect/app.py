"""Command-line interface tying the pipeline together.

Every command is a thin wrapper over one module.  Exit codes: 0 success,
1 domain error, 2 usage error.  All randomness is surfaced as --seed and
the --fixtures flag forces replay mode so nothing touches the network.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus, judges, pipeline, service, textgen
from .errors import FicdetectError
from .evaluation import generalisation_run, run_experiment
from .features import build_vocabulary, vectorize
from .models import MLPConfig, mlp_train, nb_train
from .models.persistence import load_model, save_model


@dataclass
class AppConfig:
    corpus_manifest: str = "data/corpus_manifest.json"
    recipes: str = "data/dataset_recipes.json"
    fixtures: str = "data/fixtures/responses.json"
    datasets_dir: str = "data/datasets"
    models_dir: str = "data/models"
    results_dir: str = "data/results"
    quizzes_dir: str = "data/quizzes"
    generation: dict = field(default_factory=dict)
    service: dict = field(default_factory=dict)
    default_seed: int = 7
    base_dir: Path = Path(".")

    @classmethod
    def load(cls, path: str | Path) -> "AppConfig":
        path = Path(path)
        doc = json.loads(path.read_text(encoding="utf-8"))
        paths = doc.get("paths", {})
        cfg = cls(
            corpus_manifest=paths.get("corpus_manifest", cls.corpus_manifest),
            recipes=paths.get("recipes", cls.recipes),
            fixtures=paths.get("fixtures", cls.fixtures),
            datasets_dir=paths.get("datasets_dir", cls.datasets_dir),
            models_dir=paths.get("models_dir", cls.models_dir),
            results_dir=paths.get("results_dir", cls.results_dir),
            quizzes_dir=paths.get("quizzes_dir", cls.quizzes_dir),
            generation=doc.get("generation", {}),
            service=doc.get("service", {}),
            default_seed=doc.get("default_seed", 7),
            base_dir=path.parent)
        missing = [p for p in (cfg.corpus_manifest,)
                   if not (cfg.base_dir / p).exists()]
        if missing:
            raise FicdetectError(f"config paths not resolvable: {missing}")
        return cfg

    def gen_config(self) -> textgen.GenConfig:
        allowed = {k: v for k, v in self.generation.items()
                   if k in textgen.GenConfig.__dataclass_fields__}
        return textgen.GenConfig(**allowed)

    def transport(self, fixtures_mode: bool) -> textgen.Transport:
        if fixtures_mode:
            return textgen.ReplayTransport(self.base_dir / self.fixtures)
        return textgen.HttpTransport(self.gen_config())


def _cmd_ingest(args) -> int:
    cfg = AppConfig.load(args.config)
    manifest = corpus.load_manifest(cfg.base_dir / cfg.corpus_manifest)
    chunks = pipeline.ingest_books(manifest, cfg.base_dir)
    out_dir = cfg.base_dir / cfg.datasets_dir / "human_chunks"
    total = 0
    for book_id, excerpts in chunks.items():
        corpus.write_jsonl(excerpts, out_dir / f"{book_id}.jsonl")
        print(f"{book_id}: {len(excerpts)} excerpts")
        total += len(excerpts)
    print(f"total: {total} excerpts from {len(chunks)} books -> {out_dir}")
    return 0


def _cmd_generate(args) -> int:
    cfg = AppConfig.load(args.config)
    gen_cfg = cfg.gen_config()
    transport = cfg.transport(args.fixtures)
    excerpts = corpus.read_jsonl(args.input)
    job_path = Path(args.job)
    if job_path.exists():
        job = textgen.GenJob.load(job_path)
        print(f"resuming job {job.job_id}")
    else:
        job = textgen.GenJob.for_rewrites(
            job_id=job_path.stem, excerpts=excerpts,
            order_seed=args.seed if args.seed is not None else cfg.default_seed)
    rewrites = textgen.run_generation_job(job, gen_cfg, transport, job_path)
    corpus.write_jsonl(rewrites, args.out)
    failed = sum(1 for it in job.items if it.state == textgen.FAILED)
    print(f"job {job.job_id}: {len(rewrites)} rewrites, {failed} failed -> {args.out}")
    return 0


def _cmd_build_datasets(args) -> int:
    cfg = AppConfig.load(args.config)
    built = pipeline.build_standard_datasets(
        cfg.base_dir / cfg.recipes, cfg.base_dir / cfg.corpus_manifest,
        cfg.gen_config(), cfg.transport(args.fixtures),
        out_dir=cfg.base_dir / cfg.datasets_dir, base_dir=cfg.base_dir,
        seed_override=args.seed)
    for name, ds in built.items():
        counts = ds.label_counts()
        print(f"{name}: {len(ds)} excerpts "
              f"({counts['human']} human / {counts['ai']} ai)")
    return 0


def _cmd_train(args) -> int:
    excerpts = corpus.read_jsonl(args.train)
    texts = [e.text for e in excerpts]
    labels = [e.label for e in excerpts]
    vocab = build_vocabulary(texts)
    X = vectorize(texts, vocab)
    fingerprint = corpus.dataset_fingerprint(excerpts)

    start = time.perf_counter()
    if args.model == "nb":
        model = nb_train(X, labels, alpha=args.alpha, vocab=vocab)
    else:
        model = mlp_train(X, labels,
                          MLPConfig(hidden=args.hidden, seed=args.seed or 0),
                          vocab=vocab)
    elapsed = time.perf_counter() - start
    model.dataset_fingerprint = fingerprint
    save_model(model, args.out)
    print(f"trained {args.model} on {len(excerpts)} excerpts "
          f"(vocabulary {len(vocab)}) in {elapsed:.1f}s -> {args.out}")
    return 0


def _cmd_evaluate(args) -> int:
    runner = generalisation_run if args.generalisation else run_experiment
    report = runner(args.manifest, base_dir=args.base_dir)
    print(report.table_text())
    if args.out:
        report.write_csv(args.out)
        print(f"csv -> {args.out}")
    return 0 if all(r.error is None for r in report.rows) else 1


def _cmd_classify(args) -> int:
    if args.text is None and args.file is None:
        print("classify needs --text or --file", file=sys.stderr)
        return 2
    text = args.text if args.text is not None else Path(args.file).read_text("utf-8")
    bundle = service.ClassifierBundle.from_file(args.model)
    verdict = bundle.classify(text)
    print(f"{verdict['label']} p={verdict['score_ai']:.2f}")
    if "warning" in verdict:
        print(f"warning: {verdict['warning']}", file=sys.stderr)
    return 0


def _cmd_quiz_export(args) -> int:
    ds = corpus.read_dataset("quizsource", args.dataset)
    quiz = judges.build_quiz(ds, size=args.size, seed=args.seed,
                             quiz_id=args.quiz_id)
    out_dir = Path(args.out_dir)
    judges.export_quiz(quiz, out_dir / f"{quiz.quiz_id}.quiz.json",
                       out_dir / f"{quiz.quiz_id}.key.json")
    print(f"quiz {quiz.quiz_id} ({quiz.size} items) -> {out_dir}")
    return 0


def _cmd_quiz_score(args) -> int:
    quiz = judges.load_quiz(args.quiz, args.key)
    answers = json.loads(Path(args.answers).read_text(encoding="utf-8"))
    result = judges.score_result(quiz, answers, args.respondent)
    print(f"{result.respondent_id}: {result.score}/{quiz.size}")
    return 0


def _cmd_serve(args) -> int:
    cfg = AppConfig.load(args.config)
    svc = cfg.service
    host = args.host or svc.get("host", "127.0.0.1")
    port = args.port if args.port is not None else svc.get("port", 8765)
    model_path = args.model or svc.get("model_path")
    state = service.build_state(
        model_path=(cfg.base_dir / model_path) if model_path else None,
        quiz_dir=cfg.base_dir / cfg.quizzes_dir,
        results_path=cfg.base_dir / cfg.results_dir / "judge_results.jsonl",
        cors_origin=svc.get("cors_origin", "*"))
    server = service.make_server(host, port, state)
    loaded = state.classifier.model_id if state.classifier else "none"
    print(f"serving on http://{host}:{server.server_address[1]} "
          f"(model: {loaded}, quizzes: {len(state.quizzes)})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ficdetect",
        description="Detect AI-generated detective fiction from short excerpts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="clean and chunk the corpus books")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("generate", help="run a rewrite generation job")
    p.add_argument("--config", required=True)
    p.add_argument("--input", required=True, help="human excerpts JSONL")
    p.add_argument("--job", required=True, help="job state file (resumable)")
    p.add_argument("--out", required=True, help="rewrites JSONL")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fixtures", action="store_true",
                   help="replay canned responses; no network")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("build-datasets", help="build all recipe datasets")
    p.add_argument("--config", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--fixtures", action="store_true")
    p.set_defaults(func=_cmd_build_datasets)

    p = sub.add_parser("train", help="train a classifier on a dataset")
    p.add_argument("--model", choices=("nb", "mlp"), required=True)
    p.add_argument("--train", required=True, help="training JSONL")
    p.add_argument("--out", required=True, help="model file")
    p.add_argument("--alpha", type=float, default=0.7)
    p.add_argument("--hidden", type=int, default=155)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="run an experiment manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--base-dir", default=".")
    p.add_argument("--out", default=None, help="CSV output path")
    p.add_argument("--generalisation", action="store_true",
                   help="require same_author/cross_author flags")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("classify", help="classify one excerpt")
    p.add_argument("--model", required=True)
    p.add_argument("--text", default=None)
    p.add_argument("--file", default=None)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("quiz", help="export or score quizzes")
    quiz_sub = p.add_subparsers(dest="quiz_command", required=True)
    q = quiz_sub.add_parser("export")
    q.add_argument("--dataset", required=True)
    q.add_argument("--size", type=int, default=10)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--quiz-id", default=None)
    q.add_argument("--out-dir", required=True)
    q.set_defaults(func=_cmd_quiz_export)
    q = quiz_sub.add_parser("score")
    q.add_argument("--quiz", required=True, help="respondent payload JSON")
    q.add_argument("--key", required=True, help="answer key JSON")
    q.add_argument("--answers", required=True, help="answers JSON")
    q.add_argument("--respondent", required=True)
    q.set_defaults(func=_cmd_quiz_score)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--config", required=True)
    p.add_argument("--host", default=None)
    p.add_argument("--port", type=int, default=None)
    p.add_argument("--model", default=None, help="override model file")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FicdetectError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
