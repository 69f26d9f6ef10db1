#!/usr/bin/env python3
"""Evaluate models trained on the base novels against two novels they
never saw: one by the same author, one by a different author of the same
era."""

from pathlib import Path

from ficdetect.evaluation import generalisation_run

DATA = Path(__file__).resolve().parent.parent / "data"

report = generalisation_run(DATA / "manifests" / "generalisation.json",
                            base_dir=DATA)
print(report.table_text())
worst = min(report.rows, key=lambda r: r.accuracy)
print(f"\nweakest row: {worst.model_name} on {worst.dataset_name} "
      f"({worst.author_scope}) at {worst.accuracy:.4f}")
