#!/usr/bin/env python3
"""Rank all six classifier families on the three-book dataset.

Expected shape: the single decision tree lands strictly last, the forest
beats it comfortably, and the tuned Naive Bayes and MLP take the top two
places."""

from pathlib import Path

from ficdetect.evaluation import run_experiment

DATA = Path(__file__).resolve().parent.parent / "data"

report = run_experiment(DATA / "manifests" / "model_comparison.json",
                        base_dir=DATA)
print(report.table_text())

by_model = {}
for row in report.rows:
    by_model.setdefault(row.model_name, []).append(row.accuracy)
print("\nmean accuracy:")
for name, accs in sorted(by_model.items(), key=lambda kv: -sum(kv[1])):
    print(f"  {name:20s} {sum(accs) / len(accs):.4f}")
