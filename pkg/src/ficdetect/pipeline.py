"""End-to-end dataset construction: raw novels in, labeled detection
datasets out.

A recipe file names the datasets to build.  Rewrite sets pair every
human excerpt of the listed books with its AI rewrite, balance lengths,
optionally subsample, and mix.  Prompt-only sets chunk freshly generated
stories and mix them with human excerpts borrowed from an already-built
set.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import corpus, textgen
from .corpus import (HUMAN, BookEntry, Dataset, Excerpt,
                     assemble_dataset, balance_lengths, chunk_text,
                     load_book, load_manifest, strip_boilerplate,
                     write_dataset)
from .errors import FicdetectError
from .evaluation import SplitSpec, split_dataset
from .textgen import GenConfig, Transport


def derive_seed(master_seed: int, name: str) -> int:
    """Stable per-dataset seed derived from the master seed and a name."""
    digest = hashlib.sha256(f"{master_seed}:{name}".encode("utf-8")).hexdigest()
    return int(digest[:16], 16)


def ingest_books(manifest: Sequence[BookEntry], base_dir: str | Path = ".",
                 target_words: int = 100) -> dict[str, list[Excerpt]]:
    """Strip and chunk every book in the manifest; keyed by book_id."""
    out: dict[str, list[Excerpt]] = {}
    for entry in manifest:
        raw = load_book(entry, base_dir)
        body = strip_boilerplate(raw)
        out[entry.book_id] = chunk_text(entry.book_id, body, target_words)
    return out


@dataclass
class RewriteOutcome:
    rewrites: list[Excerpt]
    failures: list[tuple[str, str]]   # (excerpt_id, error)


def rewrite_all(excerpts: Sequence[Excerpt], cfg: GenConfig,
                transport: Transport) -> RewriteOutcome:
    """Rewrite each excerpt; failed items are recorded, not fatal."""
    rewrites: list[Excerpt] = []
    failures: list[tuple[str, str]] = []
    for ex in excerpts:
        try:
            rewrites.append(textgen.rewrite_excerpt(cfg, ex, transport))
        except (textgen.RefusalOrEmpty, textgen.TransportError) as exc:
            failures.append((ex.excerpt_id, str(exc)))
    return RewriteOutcome(rewrites=rewrites, failures=failures)


def build_rewrite_dataset(name: str, human: Sequence[Excerpt], cfg: GenConfig,
                          transport: Transport, seed: int,
                          sample_per_class: int | None = None,
                          provenance: str = "") -> Dataset:
    """Human excerpts + their rewrites, length-balanced, mixed 50/50."""
    outcome = rewrite_all(human, cfg, transport)
    if not outcome.rewrites:
        raise FicdetectError(f"no rewrites produced for dataset {name!r}")
    report = balance_lengths(human, outcome.rewrites, rng_seed=seed)
    h, a = report.human, report.ai
    if sample_per_class is not None:
        rng = random.Random(seed)
        if len(h) > sample_per_class:
            h = rng.sample(h, sample_per_class)
        if len(a) > sample_per_class:
            a = rng.sample(a, sample_per_class)
    return assemble_dataset(name, h, a, seed=seed, provenance=provenance)


def build_prompt_only_dataset(name: str, prompt: str, n_excerpts: int,
                              human_pool: Sequence[Excerpt], cfg: GenConfig,
                              transport: Transport, seed: int,
                              provenance: str = "") -> Dataset:
    """Freshly generated story excerpts mixed with borrowed human ones."""
    ai = textgen.generate_prompt_only(cfg, prompt, n_excerpts,
                                      transport=transport,
                                      series_id=name.lower())
    rng = random.Random(seed)
    humans = [e for e in human_pool if e.label == HUMAN]
    if len(humans) < n_excerpts:
        raise FicdetectError(f"human pool too small for dataset {name!r}")
    chosen = rng.sample(humans, n_excerpts)
    return assemble_dataset(name, chosen, ai, seed=seed, provenance=provenance)


def build_standard_datasets(recipe_path: str | Path,
                            manifest_path: str | Path,
                            cfg: GenConfig, transport: Transport,
                            out_dir: str | Path,
                            base_dir: str | Path = ".",
                            seed_override: int | None = None) -> dict[str, Dataset]:
    """Build every dataset a recipe file describes and write them as JSONL.

    Rewrite sets may request "export_splits": train/test/unseen JSONL
    files cut with the naive split so file-level counts match the
    whole-dataset arithmetic.
    """
    base_dir = Path(base_dir)
    out_dir = Path(out_dir)
    recipe = json.loads(Path(recipe_path).read_text(encoding="utf-8"))
    master_seed = seed_override if seed_override is not None else recipe["seed"]
    manifest = load_manifest(manifest_path)
    chunks = ingest_books(manifest, base_dir)

    built: dict[str, Dataset] = {}
    for spec in recipe.get("rewrite_sets", []):
        name = spec["name"]
        human: list[Excerpt] = []
        for book_id in spec["books"]:
            human.extend(chunks[book_id])
        ds = build_rewrite_dataset(
            name, human, cfg, transport, seed=derive_seed(master_seed, name),
            sample_per_class=spec.get("sample_per_class"),
            provenance=spec.get("description", ""))
        built[name] = ds
        write_dataset(ds, out_dir / f"{name}.jsonl")
        if spec.get("export_splits"):
            split_spec = SplitSpec(seed=derive_seed(master_seed, f"{name}:split"),
                                   pairing_mode="naive")
            for part in split_dataset(ds, split_spec):
                write_dataset(part, out_dir / f"{part.name}.jsonl")

    for spec in recipe.get("prompt_only_sets", []):
        name = spec["name"]
        pool = built[spec["human_from"]].excerpts
        ds = build_prompt_only_dataset(
            name, spec["prompt"], spec["n"], pool, cfg, transport,
            seed=derive_seed(master_seed, name),
            provenance=spec.get("description", ""))
        built[name] = ds
        write_dataset(ds, out_dir / f"{name}.jsonl")

    return built
