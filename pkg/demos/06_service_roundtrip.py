#!/usr/bin/env python3
"""Spin up the HTTP service in-process, classify an excerpt, and walk a
quiz submission end to end."""

import json
import threading
import urllib.request
from pathlib import Path

from ficdetect import judges, service

DATA = Path(__file__).resolve().parent.parent / "data"

state = service.build_state(
    model_path=DATA / "models" / "nb-ac6.model.json",
    quiz_dir=DATA / "quizzes",
    results_path=Path(__file__).resolve().parent / "out" / "judge_results.jsonl")
server = service.make_server("127.0.0.1", 0, state)
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"
print(f"service on {base} (model: {state.classifier.model_id}, "
      f"quizzes: {sorted(state.quizzes)})")


def call(method, path, payload=None):
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


print("\nhealth:", call("GET", "/health"))

sample = json.loads((DATA / "datasets" / "AC6Unseen.jsonl")
                    .read_text().splitlines()[3])
verdict = call("POST", "/classify", {"text": sample["text"]})
print(f"\nclassify (true label {sample['label']}): "
      f"{verdict['label']} p={verdict['score_ai']:.2f}")

quiz_id = sorted(state.quizzes)[0]
payload = call("GET", f"/quiz/{quiz_id}")
print(f"\nquiz {quiz_id}: {len(payload['items'])} items; answering all 'ai'")
answers = {item["item_id"]: "ai" for item in payload["items"]}
submitted = call("POST", f"/quiz/{quiz_id}/answers",
                 {"respondent_id": "demo-respondent", "answers": answers})
print("submission:", submitted)
score = call("GET", f"/quiz/{quiz_id}/score/{submitted['respondent_id']}")
print("stored score:", score)

offline = judges.score_result(state.quizzes[quiz_id], answers,
                              submitted["respondent_id"])
print(f"offline recount agrees: {offline.score == submitted['score']}")

server.shutdown()
server.server_close()
