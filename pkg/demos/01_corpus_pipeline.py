#!/usr/bin/env python3
"""Walk the corpus pipeline: clean a raw novel file, chop it into
~100-word excerpts, pair them with canned rewrites, and balance the
length distributions of the two classes."""

from pathlib import Path

from ficdetect import corpus, pipeline
from ficdetect.textgen import GenConfig, ReplayTransport

DATA = Path(__file__).resolve().parent.parent / "data"

manifest = corpus.load_manifest(DATA / "corpus_manifest.json")
entry = next(b for b in manifest if b.book_id == "links")

raw = corpus.load_book(entry, DATA)
print(f"{entry.title!r}: {len(raw.body):,} raw characters")

body = corpus.strip_boilerplate(raw)
print(f"after boilerplate strip: {len(body):,} characters")

chunks = corpus.chunk_text(entry.book_id, body)
stats = corpus.length_stats(chunks)
print(f"chunked into {len(chunks)} excerpts "
      f"(mean {stats.mean_chars:.0f} chars, std {stats.std_chars:.0f})")
print("\nfirst excerpt:")
print(" ", chunks[0].text[:200], "...")

transport = ReplayTransport(DATA / "fixtures" / "responses.json")
rewrites = pipeline.rewrite_all(chunks, GenConfig(), transport).rewrites
r_stats = corpus.length_stats(rewrites)
print(f"\n{len(rewrites)} rewrites from the fixture store "
      f"(mean {r_stats.mean_chars:.0f} chars, std {r_stats.std_chars:.0f})")
print("its rewrite:")
print(" ", rewrites[0].text[:200], "...")

report = corpus.balance_lengths(chunks, rewrites, rng_seed=42)
print("\nafter balancing:")
print(f"  human: n={report.after_human.n} mean={report.after_human.mean_chars:.1f} "
      f"std={report.after_human.std_chars:.1f}")
print(f"  ai:    n={report.after_ai.n} mean={report.after_ai.mean_chars:.1f} "
      f"std={report.after_ai.std_chars:.1f}")

dataset = corpus.assemble_dataset("demo", report.human, report.ai, seed=42)
counts = dataset.label_counts()
print(f"\nassembled dataset: {len(dataset)} excerpts "
      f"({counts['human']} human / {counts['ai']} ai), shuffled")
