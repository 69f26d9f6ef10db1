#!/usr/bin/env python3
"""Build a ten-item quiz, simulate a panel of judges who are barely
better than coin flips, and bound their true accuracy with a one-tailed
t-test."""

import random
from pathlib import Path

from ficdetect import corpus, judges

DATA = Path(__file__).resolve().parent.parent / "data"

dataset = corpus.read_dataset("AC3", DATA / "datasets" / "AC3.jsonl")
quiz = judges.build_quiz(dataset, size=10, seed=2024)
print(f"quiz {quiz.quiz_id}: {quiz.size} items, labels hidden from respondents")

rng = random.Random(99)
scores = []
for judge in range(19):
    answers = {}
    for item in quiz.items:
        # a touch under 50% accuracy, like the published panel
        if rng.random() < 0.44:
            answers[item.item_id] = item.true_label
        else:
            answers[item.item_id] = "ai" if item.true_label == "human" else "human"
    result = judges.score_result(quiz, answers, f"judge-{judge:02d}")
    scores.append(result.score)

print(f"scores: {sorted(scores)}")
result = judges.t_test_upper(scores, mu0=5.5, quiz_size=quiz.size)
print(f"\nmean {result.mean:.2f} of {quiz.size}, sample sd {result.sd:.2f}")
print(f"t({result.df}) = {result.t:.2f}, one-tailed p = {result.p_one_tailed:.4f}")
print(f"95% one-sided upper bound: {result.ci_upper_one_sided:.2f} points "
      f"({result.as_proportion:.0%})")
if result.ci_upper_one_sided < 5.5:
    print("=> good evidence the judges' true accuracy is below 55%")
