import json

import numpy as np
import pytest
from scipy import stats as sp_stats

from ficdetect.corpus import AI, HUMAN, Dataset, make_excerpt
from ficdetect.errors import (IncompleteAnswers, InsufficientItems,
                              TooFewScores, ZeroVariance)
from ficdetect.judges import (JudgeResult, append_result, build_quiz,
                              export_quiz, load_quiz, read_results,
                              score_result, t_test_upper)


def sample_dataset(n_per_label: int = 20) -> Dataset:
    exs = []
    for i in range(n_per_label):
        exs.append(make_excerpt(f"h{i}", f"Human text number {i}.", HUMAN,
                                "novel_chunk"))
        exs.append(make_excerpt(f"a{i}", f"Generated text number {i}.", AI,
                                "prompt_only"))
    return Dataset(name="quizsrc", excerpts=exs, seed=0)


class TestBuildQuiz:
    def test_stratified_half_half(self):
        quiz = build_quiz(sample_dataset(), size=10, seed=3)
        labels = [it.true_label for it in quiz.items]
        assert labels.count(HUMAN) == 5 and labels.count(AI) == 5

    def test_two_items_from_minimal_dataset(self):
        quiz = build_quiz(sample_dataset(1), size=2, seed=0)
        assert {it.true_label for it in quiz.items} == {HUMAN, AI}

    def test_deterministic_by_seed(self):
        q1 = build_quiz(sample_dataset(), size=10, seed=7)
        q2 = build_quiz(sample_dataset(), size=10, seed=7)
        assert [it.item_id for it in q1.items] == [it.item_id for it in q2.items]

    def test_insufficient_items(self):
        with pytest.raises(InsufficientItems):
            build_quiz(sample_dataset(2), size=10, seed=0)

    def test_respondent_payload_has_no_labels(self):
        quiz = build_quiz(sample_dataset(), size=10, seed=1)
        payload = json.dumps(quiz.respondent_payload())
        assert "label" not in payload
        assert "human" not in payload.replace("Human text", "")


class TestScoreResult:
    def test_all_correct(self):
        quiz = build_quiz(sample_dataset(), size=10, seed=2)
        result = score_result(quiz, quiz.answer_key(), "r1")
        assert result.score == 10

    def test_complement_scores_zero(self):
        quiz = build_quiz(sample_dataset(), size=10, seed=2)
        flipped = {k: (AI if v == HUMAN else HUMAN)
                   for k, v in quiz.answer_key().items()}
        assert score_result(quiz, flipped, "r2").score == 0

    def test_six_of_ten(self):
        quiz = build_quiz(sample_dataset(), size=10, seed=2)
        key = quiz.answer_key()
        answers = dict(key)
        for item_id in list(key)[:4]:
            answers[item_id] = AI if key[item_id] == HUMAN else HUMAN
        assert score_result(quiz, answers, "r3").score == 6

    def test_missing_answers_listed(self):
        quiz = build_quiz(sample_dataset(), size=10, seed=2)
        answers = dict(list(quiz.answer_key().items())[:7])
        with pytest.raises(IncompleteAnswers) as err:
            score_result(quiz, answers, "r4")
        assert len(err.value.missing) == 3

    def test_extra_answer_order_irrelevant(self):
        quiz = build_quiz(sample_dataset(), size=4, seed=2)
        key = quiz.answer_key()
        reversed_answers = dict(reversed(list(key.items())))
        assert score_result(quiz, reversed_answers, "r5").score == 4


class TestTTestUpper:
    def test_hand_case_3_4_5(self):
        res = t_test_upper([3, 4, 5], mu0=5.5, quiz_size=10)
        assert res.mean == pytest.approx(4.0)
        assert res.sd == pytest.approx(1.0)
        assert res.t == pytest.approx(-1.5 * np.sqrt(3), abs=1e-12)
        assert res.df == 2
        assert res.p_one_tailed == pytest.approx(0.06084, abs=5e-4)

    def test_symmetric_scores_give_t_zero(self):
        res = t_test_upper([5, 6], mu0=5.5)
        assert res.t == pytest.approx(0.0, abs=1e-12)
        assert res.p_one_tailed == pytest.approx(0.5, abs=1e-12)

    def test_zero_variance(self):
        with pytest.raises(ZeroVariance):
            t_test_upper([4, 4, 4], mu0=5.5)

    def test_too_few(self):
        with pytest.raises(TooFewScores):
            t_test_upper([4], mu0=5.5)

    def test_location_invariance(self):
        scores = [2, 3, 3, 4, 5, 6, 6, 7]
        base = t_test_upper(scores, mu0=5.0)
        shifted = t_test_upper([s + 3 for s in scores], mu0=8.0)
        assert shifted.t == pytest.approx(base.t, abs=1e-12)
        assert shifted.p_one_tailed == pytest.approx(base.p_one_tailed, abs=1e-12)
        assert (shifted.ci_upper_one_sided - shifted.mean) == pytest.approx(
            base.ci_upper_one_sided - base.mean, abs=1e-12)

    def test_matches_scipy_on_random_integer_scores(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            scores = rng.integers(0, 11, size=rng.integers(5, 30)).tolist()
            if len(set(scores)) == 1:
                continue
            res = t_test_upper(scores, mu0=5.5)
            t_ref, p_ref = sp_stats.ttest_1samp(scores, 5.5)
            p_lower = p_ref / 2 if t_ref < 0 else 1 - p_ref / 2
            assert res.t == pytest.approx(float(t_ref), abs=1e-10)
            assert res.p_one_tailed == pytest.approx(float(p_lower), abs=1e-10)


class TestQuizFiles:
    def test_export_and_load_round_trip(self, tmp_path):
        quiz = build_quiz(sample_dataset(), size=10, seed=5)
        payload = tmp_path / "q.quiz.json"
        key = tmp_path / "q.key.json"
        export_quiz(quiz, payload, key)
        assert "true_label" not in payload.read_text()
        assert load_quiz(payload, key) == quiz

    def test_results_store_appends(self, tmp_path):
        path = tmp_path / "results.jsonl"
        quiz = build_quiz(sample_dataset(), size=4, seed=5)
        r1 = score_result(quiz, quiz.answer_key(), "alice")
        r2 = score_result(quiz, quiz.answer_key(), "bob")
        append_result(r1, path)
        append_result(r2, path)
        stored = read_results(path)
        assert [r.respondent_id for r in stored] == ["alice", "bob"]
        assert all(isinstance(r, JudgeResult) for r in stored)
