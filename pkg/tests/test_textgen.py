import json
import threading
from http.server import BaseHTTPRequestHandler, HTTPServer

import pytest

from ficdetect.corpus import AI, HUMAN, make_excerpt
from ficdetect.errors import (AuthError, InsufficientOutput, RefusalOrEmpty,
                              TransportError)
from ficdetect.textgen import (DEFAULT_REWRITE_PROMPT, GenConfig, GenJob,
                               HttpTransport, RateLimiter, ReplayTransport,
                               build_request, generate_prompt_only,
                               postprocess_response, request_fingerprint,
                               rewrite_excerpt, rewrite_request,
                               run_generation_job, send_with_retry)


def human_excerpt(i: int = 1):
    return make_excerpt(f"h{i}", f"The inspector paused at gate number {i}.",
                        HUMAN, "novel_chunk")


class FailingTransport:
    """Trips the moment anything touches it; proves replay does no I/O."""

    def send(self, body):
        raise AssertionError("network transport was contacted")


def fixture_for(cfg: GenConfig, text: str, response) -> dict:
    return {request_fingerprint(rewrite_request(cfg, text)): response}


class TestRequestShape:
    def test_default_config_serializes_model_and_temperature(self):
        cfg = GenConfig()
        body = rewrite_request(cfg, "Some text.")
        blob = json.dumps(body)
        assert '"gpt-3.5-turbo-0125"' in blob
        assert body["temperature"] == 0.7
        assert body["messages"][0]["role"] == "user"
        assert body["messages"][0]["content"].startswith(
            "You will take the role of an author of crime novels.")
        assert body["messages"][0]["content"].endswith("Some text.")

    def test_prompt_default_is_the_rewrite_instruction(self):
        assert GenConfig().prompt == DEFAULT_REWRITE_PROMPT
        assert DEFAULT_REWRITE_PROMPT.endswith("Text excerpt:")

    def test_temperature_range_enforced(self):
        with pytest.raises(ValueError):
            GenConfig(temperature=2.5)

    def test_fingerprint_stable_and_sensitive(self):
        cfg = GenConfig()
        a = request_fingerprint(rewrite_request(cfg, "One."))
        b = request_fingerprint(rewrite_request(cfg, "One."))
        c = request_fingerprint(rewrite_request(cfg, "Two."))
        assert a == b != c


class TestPostprocess:
    def test_strips_whitespace_and_quotes(self):
        assert postprocess_response('  "The text."  ') == "The text."

    def test_curly_quotes(self):
        assert postprocess_response("“The text.”") == "The text."

    def test_empty_rejected(self):
        with pytest.raises(RefusalOrEmpty):
            postprocess_response("   ")

    def test_placeholder_rejected(self):
        with pytest.raises(RefusalOrEmpty):
            postprocess_response("[new text passage here]")


class TestReplay:
    def test_rewrite_via_fixture_with_no_network(self, monkeypatch):
        import socket
        import urllib.request

        def trip(*args, **kwargs):
            raise AssertionError("replay mode opened a network connection")

        monkeypatch.setattr(socket, "socket", trip)
        monkeypatch.setattr(urllib.request, "urlopen", trip)

        cfg = GenConfig()
        ex = human_excerpt()
        fixtures = fixture_for(cfg, ex.text, "The inspector paused at the gate.")
        out = rewrite_excerpt(cfg, ex, ReplayTransport(fixtures))
        assert out.text == "The inspector paused at the gate."
        assert out.label == AI and out.origin == "rewrite"
        assert out.source_excerpt_id == ex.excerpt_id

    def test_missing_fixture_is_flagged(self):
        cfg = GenConfig()
        with pytest.raises(TransportError):
            rewrite_excerpt(cfg, human_excerpt(), ReplayTransport({}))

    def test_list_fixture_consumed_in_order(self):
        cfg = GenConfig(request_cap=5)
        body = build_request(cfg, "tell a story")
        fixtures = {request_fingerprint(body): ["First reply.", "Second reply."]}
        transport = ReplayTransport(fixtures)
        assert transport.send(body) == "First reply."
        assert transport.send(body) == "Second reply."
        assert transport.send(body) == "First reply."

    def test_rewrite_rejects_ai_source(self):
        cfg = GenConfig()
        ai_ex = make_excerpt("g1", "Generated text.", AI, "prompt_only")
        with pytest.raises(ValueError):
            rewrite_excerpt(cfg, ai_ex, FailingTransport())


class TestRetry:
    def test_retries_until_success(self):
        calls = {"n": 0}

        class Flaky:
            def send(self, body):
                calls["n"] += 1
                if calls["n"] < 3:
                    raise TransportError("HTTP 429", retryable=True, status=429)
                return "Fine."

        cfg = GenConfig(max_retries=3, backoff_base=0.0)
        out = send_with_retry(cfg, Flaky(), {"x": 1}, sleep=lambda s: None)
        assert out == "Fine." and calls["n"] == 3

    def test_gives_up_after_max_retries(self):
        class AlwaysDown:
            def send(self, body):
                raise TransportError("HTTP 503", retryable=True, status=503)

        cfg = GenConfig(max_retries=2, backoff_base=0.0)
        with pytest.raises(TransportError):
            send_with_retry(cfg, AlwaysDown(), {}, sleep=lambda s: None)

    def test_backoff_doubles(self):
        waits = []

        class AlwaysDown:
            def send(self, body):
                raise TransportError("x", retryable=True)

        cfg = GenConfig(max_retries=3, backoff_base=0.5)
        with pytest.raises(TransportError):
            send_with_retry(cfg, AlwaysDown(), {}, sleep=waits.append)
        assert waits == [0.5, 1.0, 2.0]

    def test_non_retryable_not_retried(self):
        calls = {"n": 0}

        class Bad:
            def send(self, body):
                calls["n"] += 1
                raise TransportError("HTTP 400", retryable=False, status=400)

        with pytest.raises(TransportError):
            send_with_retry(GenConfig(max_retries=5), Bad(), {}, sleep=lambda s: None)
        assert calls["n"] == 1


class TestRateLimiter:
    def test_spacing_respected_with_fake_clock(self):
        now = {"t": 0.0}
        sleeps = []

        def sleep(s):
            sleeps.append(s)
            now["t"] += s

        limiter = RateLimiter(60, sleep=sleep, clock=lambda: now["t"])
        limiter.wait()
        limiter.wait()
        assert sleeps == [pytest.approx(1.0)]

    def test_no_wait_when_interval_passed(self):
        now = {"t": 0.0}
        sleeps = []
        limiter = RateLimiter(60, sleep=sleeps.append, clock=lambda: now["t"])
        limiter.wait()
        now["t"] += 5.0
        limiter.wait()
        assert sleeps == []


class TestPromptOnly:
    def test_chunks_one_canned_story(self):
        cfg = GenConfig()
        prompt = "please write a story about a detective"
        story = " ".join(
            f"Scene {i} of the investigation unfolded with several careful words "
            f"written in sequence number {i} to pad the tale." for i in range(25))
        fixtures = {request_fingerprint(build_request(cfg, prompt)): story}
        out = generate_prompt_only(cfg, prompt, 2, transport=ReplayTransport(fixtures),
                                   series_id="t1")
        assert len(out) == 2
        assert all(e.text.endswith(".") for e in out)
        assert all(e.origin == "prompt_only" and e.label == AI for e in out)

    def test_repeats_requests_until_enough(self):
        cfg = GenConfig(request_cap=10)
        prompt = "another story please"
        story = ("A different short scene unfolds here with twelve or so words "
                 "in it, truly.")
        fixtures = {request_fingerprint(build_request(cfg, prompt)): [story] * 10}
        out = generate_prompt_only(cfg, prompt, 2, target_words=20,
                                   transport=ReplayTransport(fixtures),
                                   series_id="t2")
        assert len(out) == 2

    def test_insufficient_output(self):
        cfg = GenConfig(request_cap=3)
        prompt = "story"
        fixtures = {request_fingerprint(build_request(cfg, prompt)): ["Tiny."] * 3}
        with pytest.raises(InsufficientOutput):
            generate_prompt_only(cfg, prompt, 5, transport=ReplayTransport(fixtures))


class CountingTransport:
    def __init__(self, cfg):
        self.cfg = cfg
        self.sent = []

    def send(self, body):
        self.sent.append(body)
        text = body["messages"][0]["content"].rsplit("\n", 1)[-1]
        return f"Rewritten: {text}"


class TestGenerationJob:
    def test_order_is_seeded_permutation(self, tmp_path):
        excerpts = [human_excerpt(i) for i in range(6)]
        j1 = GenJob.for_rewrites("j1", excerpts, order_seed=99)
        j2 = GenJob.for_rewrites("j2", excerpts, order_seed=99)
        assert j1.processing_order() == j2.processing_order()
        assert sorted(j1.processing_order()) == list(range(6))

    def test_run_and_resume_skips_done(self, tmp_path):
        cfg = GenConfig(requests_per_minute=0, backoff_base=0.0)
        excerpts = [human_excerpt(i) for i in range(3)]
        job_path = tmp_path / "job.json"

        job = GenJob.for_rewrites("job", excerpts, order_seed=5)
        first = job.processing_order()[0]
        transport = CountingTransport(cfg)
        job.items[first].state = "done"
        job.items[first].response = "Already rewritten text."
        job.save(job_path)

        resumed = GenJob.load(job_path)
        out = run_generation_job(resumed, cfg, transport, job_path)
        assert len(transport.sent) == 2
        assert len(out) == 3
        assert all(e.label == AI for e in out)

    def test_failed_items_do_not_abort(self, tmp_path):
        cfg = GenConfig(requests_per_minute=0, max_retries=0, backoff_base=0.0)
        excerpts = [human_excerpt(i) for i in range(3)]

        class SometimesEmpty:
            def send(self, body):
                if "gate number 1" in body["messages"][0]["content"]:
                    return "   "
                return "Fine response text."

        job = GenJob.for_rewrites("job", excerpts, order_seed=1)
        out = run_generation_job(job, cfg, SometimesEmpty(), tmp_path / "j.json")
        states = sorted(it.state for it in job.items)
        assert states == ["done", "done", "failed"]
        assert len(out) == 2

    def test_rate_limit_spaces_requests(self, tmp_path):
        now = {"t": 0.0}
        sleeps = []

        def sleep(s):
            sleeps.append(s)
            now["t"] += s

        cfg = GenConfig(requests_per_minute=60)
        excerpts = [human_excerpt(i) for i in range(2)]
        job = GenJob.for_rewrites("job", excerpts, order_seed=1)
        run_generation_job(job, cfg, CountingTransport(cfg), tmp_path / "j.json",
                           sleep=sleep, clock=lambda: now["t"])
        assert sleeps == [pytest.approx(1.0)]

    def test_auth_error_fatal_and_state_saved(self, tmp_path):
        cfg = GenConfig(requests_per_minute=0)

        class Rejecting:
            def send(self, body):
                raise AuthError("401")

        job = GenJob.for_rewrites("job", [human_excerpt(1)], order_seed=0)
        path = tmp_path / "j.json"
        with pytest.raises(AuthError):
            run_generation_job(job, cfg, Rejecting(), path)
        assert GenJob.load(path).items[0].state == "pending"

    def test_multiset_of_requests_equals_inputs(self, tmp_path):
        cfg = GenConfig(requests_per_minute=0)
        excerpts = [human_excerpt(i) for i in range(5)]
        transport = CountingTransport(cfg)
        job = GenJob.for_rewrites("job", excerpts, order_seed=3)
        run_generation_job(job, cfg, transport, tmp_path / "j.json")
        sent_texts = sorted(b["messages"][0]["content"].rsplit("\n", 1)[-1]
                            for b in transport.sent)
        assert sent_texts == sorted(e.text for e in excerpts)


class _StubHandler(BaseHTTPRequestHandler):
    responses = []

    def do_POST(self):
        status, payload = self.responses.pop(0)
        body = json.dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, *args):
        pass


@pytest.fixture
def stub_server():
    server = HTTPServer(("127.0.0.1", 0), _StubHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server
    server.shutdown()
    server.server_close()


class TestHttpTransport:
    def test_429_twice_then_success_is_three_attempts(self, stub_server):
        _StubHandler.responses = [
            (429, {"error": "rate"}),
            (429, {"error": "rate"}),
            (200, {"choices": [{"message": {"content": "Done text."}}]}),
        ]
        port = stub_server.server_address[1]
        cfg = GenConfig(endpoint_url=f"http://127.0.0.1:{port}/v1/chat",
                        max_retries=3, backoff_base=0.0)
        out = send_with_retry(cfg, HttpTransport(cfg), rewrite_request(cfg, "X."),
                              sleep=lambda s: None)
        assert out == "Done text."
        assert _StubHandler.responses == []

    def test_401_raises_auth_error(self, stub_server):
        _StubHandler.responses = [(401, {"error": "no"})]
        port = stub_server.server_address[1]
        cfg = GenConfig(endpoint_url=f"http://127.0.0.1:{port}/v1/chat")
        with pytest.raises(AuthError):
            HttpTransport(cfg).send(rewrite_request(cfg, "X."))
