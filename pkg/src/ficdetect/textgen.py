"""Client for a chat-completions-style HTTP endpoint.

Produces AI rewrites of human excerpts and prompt-only stories, one
excerpt or story per request, in a seeded random order, with retries,
rate limiting, resumable job files, and a replay transport that serves
checked-in fixtures so the whole pipeline runs offline.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import time
import urllib.error
import urllib.request
from dataclasses import dataclass, field, asdict
from pathlib import Path
from typing import Callable, Protocol, Sequence

from . import corpus
from .corpus import AI, ORIGIN_PROMPT, ORIGIN_REWRITE, Excerpt, make_excerpt
from .errors import (AuthError, InsufficientOutput, RefusalOrEmpty,
                     TransportError)

DEFAULT_MODEL_ID = "gpt-3.5-turbo-0125"
DEFAULT_TEMPERATURE = 0.7
DEFAULT_ENDPOINT = "https://api.openai.com/v1/chat/completions"

DEFAULT_REWRITE_PROMPT = (
    "You will take the role of an author of crime novels. A text excerpt "
    "will be provided, you have to review it for number of space characters "
    "and key details. Create a new text excerpt which contains the same key "
    "details but appears structurally different to the original. The new "
    "text must have approximately the same number of spaces as the original. "
    "Only return the new text passage. Do not include place holders, line "
    "breaks or any other text except the new passage. Text excerpt:"
)


@dataclass(frozen=True)
class GenConfig:
    model_id: str = DEFAULT_MODEL_ID
    temperature: float = DEFAULT_TEMPERATURE
    prompt: str = DEFAULT_REWRITE_PROMPT
    endpoint_url: str = DEFAULT_ENDPOINT
    api_key_env: str = "OPENAI_API_KEY"
    max_retries: int = 3
    requests_per_minute: int = 60
    backoff_base: float = 0.5      # seconds; doubled per retry
    request_cap: int = 50          # prompt-only: max requests per call
    timeout: float = 60.0

    def __post_init__(self):
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be in [0, 2]")


def build_request(cfg: GenConfig, content: str) -> dict:
    """The chat-completions request body for one user message."""
    return {"model": cfg.model_id,
            "temperature": cfg.temperature,
            "messages": [{"role": "user", "content": content}]}


def rewrite_request(cfg: GenConfig, excerpt_text: str) -> dict:
    return build_request(cfg, f"{cfg.prompt}\n{excerpt_text}")


def request_fingerprint(body: dict) -> str:
    """Stable key for fixture lookup: sha256 of the canonical body."""
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True)
    return hashlib.sha256(blob.encode("ascii")).hexdigest()


class Transport(Protocol):
    def send(self, body: dict) -> str: ...


class HttpTransport:
    """POSTs request bodies to the configured endpoint with a bearer token."""

    def __init__(self, cfg: GenConfig):
        self.cfg = cfg

    def send(self, body: dict) -> str:
        api_key = os.environ.get(self.cfg.api_key_env, "")
        req = urllib.request.Request(
            self.cfg.endpoint_url,
            data=json.dumps(body).encode("utf-8"),
            headers={"Content-Type": "application/json",
                     "Authorization": f"Bearer {api_key}"},
            method="POST")
        try:
            with urllib.request.urlopen(req, timeout=self.cfg.timeout) as resp:
                payload = json.loads(resp.read().decode("utf-8"))
        except urllib.error.HTTPError as exc:
            if exc.code in (401, 403):
                raise AuthError(f"endpoint rejected credentials ({exc.code})") from exc
            retryable = exc.code == 429 or exc.code >= 500
            raise TransportError(f"HTTP {exc.code} from endpoint",
                                 retryable=retryable, status=exc.code) from exc
        except (urllib.error.URLError, TimeoutError, OSError) as exc:
            raise TransportError(f"network failure: {exc}") from exc
        try:
            return payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed response: {exc}",
                                 retryable=False) from exc


class ReplayTransport:
    """Serves canned responses keyed by request fingerprint; never
    touches the network.

    A fixture value may be a single string or a list of strings; lists
    are consumed in order for repeated identical requests.
    """

    def __init__(self, fixtures: dict | str | Path):
        if isinstance(fixtures, (str, Path)):
            fixtures = json.loads(Path(fixtures).read_text(encoding="utf-8"))
        self.fixtures = fixtures
        self._cursors: dict[str, int] = {}
        self.requests_served = 0

    def send(self, body: dict) -> str:
        key = request_fingerprint(body)
        if key not in self.fixtures:
            raise TransportError(f"no fixture for request {key[:12]}...",
                                 retryable=False)
        value = self.fixtures[key]
        self.requests_served += 1
        if isinstance(value, str):
            return value
        cursor = self._cursors.get(key, 0)
        self._cursors[key] = (cursor + 1) % len(value)
        return value[cursor]


def postprocess_response(text: str) -> str:
    """Strip whitespace and one layer of surrounding quotes; reject empty
    or placeholder-framed responses."""
    out = text.strip()
    for open_q, close_q in (('"', '"'), ("'", "'"), ("“", "”")):
        if len(out) >= 2 and out.startswith(open_q) and out.endswith(close_q):
            out = out[1:-1].strip()
            break
    if not out:
        raise RefusalOrEmpty("empty response")
    if out.startswith("[") and out.endswith("]"):
        raise RefusalOrEmpty("placeholder response")
    return out


def send_with_retry(cfg: GenConfig, transport: Transport, body: dict,
                    sleep: Callable[[float], None] = time.sleep) -> str:
    """One logical request with exponential backoff on retryable errors."""
    attempt = 0
    while True:
        try:
            return transport.send(body)
        except TransportError as exc:
            if not exc.retryable or attempt >= cfg.max_retries:
                raise
            sleep(cfg.backoff_base * (2 ** attempt))
            attempt += 1


class RateLimiter:
    """Spaces request starts at least 60/requests_per_minute apart."""

    def __init__(self, requests_per_minute: int,
                 sleep: Callable[[float], None] = time.sleep,
                 clock: Callable[[], float] = time.monotonic):
        self.interval = 60.0 / requests_per_minute if requests_per_minute > 0 else 0.0
        self.sleep = sleep
        self.clock = clock
        self._last: float | None = None

    def wait(self) -> None:
        now = self.clock()
        if self._last is not None:
            remaining = self.interval - (now - self._last)
            if remaining > 0:
                self.sleep(remaining)
                now = self.clock()
        self._last = now


def rewrite_excerpt(cfg: GenConfig, ex: Excerpt, transport: Transport,
                    sleep: Callable[[float], None] = time.sleep) -> Excerpt:
    """Ask the model to restructure one human excerpt; returns the AI twin."""
    if ex.label != corpus.HUMAN:
        raise ValueError("only human excerpts can be rewritten")
    body = rewrite_request(cfg, ex.text)
    text = postprocess_response(send_with_retry(cfg, transport, body, sleep))
    return make_excerpt(f"{ex.excerpt_id}:rw", text, AI, ORIGIN_REWRITE,
                        source_excerpt_id=ex.excerpt_id)


def generate_prompt_only(cfg: GenConfig, prompt: str, n_excerpts: int,
                         target_words: int = 100,
                         transport: Transport | None = None,
                         series_id: str = "gen",
                         sleep: Callable[[float], None] = time.sleep) -> list[Excerpt]:
    """Request stories until the accumulated text chunks into n_excerpts.

    Each request asks for another story with the same prompt; the
    combined text is chunked exactly like novel text.  Raises
    InsufficientOutput once cfg.request_cap requests were not enough.
    """
    if n_excerpts < 1:
        raise ValueError("n_excerpts must be >= 1")
    if transport is None:
        transport = HttpTransport(cfg)
    body = build_request(cfg, prompt)
    story_parts: list[str] = []
    for _ in range(cfg.request_cap):
        text = postprocess_response(send_with_retry(cfg, transport, body, sleep))
        story_parts.append(text)
        combined = "\n\n".join(story_parts)
        if "." not in combined:
            continue
        chunks = corpus.chunk_text(series_id, combined, target_words)
        if len(chunks) >= n_excerpts:
            selected = chunks[:n_excerpts]
            return [make_excerpt(f"{series_id}-p{idx:04d}", c.text, AI,
                                 ORIGIN_PROMPT)
                    for idx, c in enumerate(selected)]
    raise InsufficientOutput(
        f"{cfg.request_cap} requests produced fewer than {n_excerpts} excerpts")


# ---------------------------------------------------------------------------
# Resumable generation jobs
# ---------------------------------------------------------------------------

PENDING = "pending"
DONE = "done"
FAILED = "failed"


@dataclass
class JobItem:
    item_id: str
    text: str                  # source excerpt text (rewrite mode)
    state: str = PENDING
    response: str | None = None
    error: str | None = None


@dataclass
class GenJob:
    job_id: str
    mode: str                  # rewrite | prompt_only
    order_seed: int
    items: list[JobItem] = field(default_factory=list)
    prompt: str | None = None
    target_count: int = 0

    @classmethod
    def for_rewrites(cls, job_id: str, excerpts: Sequence[Excerpt],
                     order_seed: int) -> "GenJob":
        items = [JobItem(item_id=e.excerpt_id, text=e.text) for e in excerpts]
        return cls(job_id=job_id, mode="rewrite", order_seed=order_seed,
                   items=items)

    def processing_order(self) -> list[int]:
        order = list(range(len(self.items)))
        random.Random(self.order_seed).shuffle(order)
        return order

    def save(self, path: str | Path) -> None:
        """Atomic rewrite so a killed job never leaves a torn file."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps({
            "job_id": self.job_id, "mode": self.mode,
            "order_seed": self.order_seed, "prompt": self.prompt,
            "target_count": self.target_count,
            "items": [asdict(it) for it in self.items],
        }, ensure_ascii=False), encoding="utf-8")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | Path) -> "GenJob":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        items = [JobItem(**it) for it in doc.pop("items")]
        return cls(items=items, **doc)


def run_generation_job(job: GenJob, cfg: GenConfig, transport: Transport,
                       job_path: str | Path,
                       sleep: Callable[[float], None] = time.sleep,
                       clock: Callable[[], float] = time.monotonic) -> list[Excerpt]:
    """Process a rewrite job's pending items in seeded random order.

    Completed items are skipped on resume, the job file is atomically
    rewritten after every item, and the rate limit is honored across
    items.  Item-level failures leave the item failed and the job
    continues; AuthError aborts after persisting progress.
    """
    if job.mode != "rewrite":
        raise ValueError("run_generation_job handles rewrite jobs")
    limiter = RateLimiter(cfg.requests_per_minute, sleep=sleep, clock=clock)
    job.save(job_path)
    for idx in job.processing_order():
        item = job.items[idx]
        if item.state == DONE:
            continue
        limiter.wait()
        body = rewrite_request(cfg, item.text)
        try:
            item.response = postprocess_response(
                send_with_retry(cfg, transport, body, sleep))
            item.state = DONE
            item.error = None
        except (RefusalOrEmpty, TransportError) as exc:
            item.state = FAILED
            item.error = str(exc)
        except AuthError:
            job.save(job_path)
            raise
        job.save(job_path)
    return job_excerpts(job)


def job_excerpts(job: GenJob) -> list[Excerpt]:
    """The rewrite excerpts of a job's completed items, in input order."""
    return [make_excerpt(f"{it.item_id}:rw", it.response, AI, ORIGIN_REWRITE,
                         source_excerpt_id=it.item_id)
            for it in job.items if it.state == DONE]
