import json
import threading
from concurrent.futures import ThreadPoolExecutor

import httpx
import pytest

from ficdetect import judges
from ficdetect.corpus import AI, HUMAN, Dataset, make_excerpt
from ficdetect.features import build_vocabulary, vectorize
from ficdetect.models import nb_train, save_model
from ficdetect.service import (ClassifierBundle, build_state, load_quiz_dir,
                               make_server)

IN_REGIME = ("The inspector crossed the terrace and studied the faded "
             "telegram while the housekeeper waited by the morning-room "
             "door, saying nothing of the quarrel she had overheard on the "
             "previous evening, although the letter in her apron pocket "
             "would have interested him considerably more than the telegram "
             "itself, for it named the visitor who had come by the late "
             "train and left again before dawn without once ringing for the "
             "parlourmaid or asking after the master of the house at all.")


@pytest.fixture(scope="module")
def service_env(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("svc")
    docs, labels = [], []
    for i in range(30):
        docs.append(f"the inspector said it was quite plain number {i}")
        labels.append(HUMAN)
        docs.append(f"however the detective observed the outcome number {i}")
        labels.append(AI)
    vocab = build_vocabulary(docs)
    model = nb_train(vectorize(docs, vocab), labels, alpha=0.7, vocab=vocab)
    model_path = tmp / "svc.model.json"
    save_model(model, model_path)

    excerpts = []
    for i in range(10):
        excerpts.append(make_excerpt(f"h{i}", f"Said plainly number {i}.",
                                     HUMAN, "novel_chunk"))
        excerpts.append(make_excerpt(f"a{i}", f"Observed outcome number {i}.",
                                     AI, "prompt_only"))
    quiz = judges.build_quiz(Dataset("quizsrc", excerpts, seed=0), size=10,
                             seed=3, quiz_id="svc-quiz")
    quiz_dir = tmp / "quizzes"
    judges.export_quiz(quiz, quiz_dir / "svc-quiz.quiz.json",
                       quiz_dir / "svc-quiz.key.json")

    state = build_state(model_path=model_path, quiz_dir=quiz_dir,
                        results_path=tmp / "results.jsonl",
                        cors_origin="http://ui.example")
    server = make_server("127.0.0.1", 0, state)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    base = f"http://127.0.0.1:{server.server_address[1]}"
    yield {"base": base, "quiz": quiz, "model_path": model_path, "tmp": tmp}
    server.shutdown()
    server.server_close()


class TestHealthAndClassify:
    def test_health(self, service_env):
        r = httpx.get(service_env["base"] + "/health")
        assert r.status_code == 200
        assert r.json() == {"status": "ok", "model_id": "svc.model"}

    def test_classify_round_trip(self, service_env):
        r = httpx.post(service_env["base"] + "/classify",
                       json={"text": IN_REGIME})
        assert r.status_code == 200
        body = r.json()
        assert body["label"] in (AI, HUMAN)
        assert 0.0 <= body["score_ai"] <= 1.0
        assert body["model_kind"] == "nb"
        assert body["excerpt_char_len"] == len(IN_REGIME)
        assert "warning" not in body

    def test_short_text_gets_warning(self, service_env):
        r = httpx.post(service_env["base"] + "/classify",
                       json={"text": "Too short to trust."})
        assert r.status_code == 200
        assert "warning" in r.json()

    def test_empty_text_400(self, service_env):
        r = httpx.post(service_env["base"] + "/classify", json={"text": ""})
        assert r.status_code == 400
        assert r.json()["error"] == "empty_text"

    def test_invalid_json_400(self, service_env):
        r = httpx.post(service_env["base"] + "/classify",
                       content=b"{nope", headers={"Content-Type": "application/json"})
        assert r.status_code == 400

    def test_cors_header_present(self, service_env):
        r = httpx.options(service_env["base"] + "/classify")
        assert r.status_code == 204
        assert r.headers["access-control-allow-origin"] == "http://ui.example"

    def test_matches_offline_classification_exactly(self, service_env):
        bundle = ClassifierBundle.from_file(service_env["model_path"])
        offline = bundle.classify(IN_REGIME)
        online = httpx.post(service_env["base"] + "/classify",
                            json={"text": IN_REGIME}).json()
        assert online == json.loads(json.dumps(offline))

    def test_concurrent_requests_identical(self, service_env):
        def go(_):
            return httpx.post(service_env["base"] + "/classify",
                              json={"text": IN_REGIME}).text

        with ThreadPoolExecutor(max_workers=16) as pool:
            bodies = list(pool.map(go, range(32)))
        assert len(set(bodies)) == 1


class TestQuizEndpoints:
    def test_payload_has_no_labels(self, service_env):
        r = httpx.get(service_env["base"] + "/quiz/svc-quiz")
        assert r.status_code == 200
        payload = r.json()
        assert set(payload) == {"quiz_id", "items"}
        assert len(payload["items"]) == 10
        for item in payload["items"]:
            assert set(item) == {"item_id", "text"}
        assert "true_label" not in r.text

    def test_unknown_quiz_404(self, service_env):
        assert httpx.get(service_env["base"] + "/quiz/ghost").status_code == 404

    def test_submit_score_roundtrip_and_duplicate(self, service_env):
        quiz = service_env["quiz"]
        answers = quiz.answer_key()
        wrong_items = list(answers)[:3]
        for item in wrong_items:
            answers[item] = AI if answers[item] == HUMAN else HUMAN

        r = httpx.post(service_env["base"] + "/quiz/svc-quiz/answers",
                       json={"respondent_id": "resp-1", "answers": answers})
        assert r.status_code == 200
        assert r.json()["score"] == 7
        correct = r.json()["correct"]
        assert sum(correct.values()) == 7
        assert all(correct[i] == (i not in wrong_items) for i in correct)

        offline = judges.score_result(quiz, answers, "resp-1")
        assert offline.score == r.json()["score"]

        r2 = httpx.get(service_env["base"] + "/quiz/svc-quiz/score/resp-1")
        assert r2.status_code == 200
        assert r2.json() == {"quiz_id": "svc-quiz", "respondent_id": "resp-1",
                             "score": 7, "quiz_size": 10}

        dup = httpx.post(service_env["base"] + "/quiz/svc-quiz/answers",
                         json={"respondent_id": "resp-1", "answers": answers})
        assert dup.status_code == 409
        assert dup.json()["error"] == "duplicate_submission"

    def test_incomplete_answers_400(self, service_env):
        quiz = service_env["quiz"]
        answers = dict(list(quiz.answer_key().items())[:4])
        r = httpx.post(service_env["base"] + "/quiz/svc-quiz/answers",
                       json={"respondent_id": "resp-2", "answers": answers})
        assert r.status_code == 400
        assert r.json()["error"] == "incomplete_answers"

    def test_unknown_respondent_404(self, service_env):
        r = httpx.get(service_env["base"] + "/quiz/svc-quiz/score/nobody")
        assert r.status_code == 404


class TestDegradedService:
    def test_classify_without_model_503(self, tmp_path):
        state = build_state(model_path=None, quiz_dir=None,
                            results_path=tmp_path / "r.jsonl")
        server = make_server("127.0.0.1", 0, state)
        thread = threading.Thread(target=server.serve_forever, daemon=True)
        thread.start()
        base = f"http://127.0.0.1:{server.server_address[1]}"
        try:
            assert httpx.get(base + "/health").json()["status"] == "degraded"
            r = httpx.post(base + "/classify", json={"text": "Some text."})
            assert r.status_code == 503
            assert r.json()["error"] == "model_not_loaded"
        finally:
            server.shutdown()
            server.server_close()


def test_load_quiz_dir_skips_orphans(tmp_path):
    (tmp_path / "orphan.quiz.json").write_text('{"quiz_id": "x", "items": []}')
    assert load_quiz_dir(tmp_path) == {}
