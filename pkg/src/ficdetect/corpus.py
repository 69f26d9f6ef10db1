"""Corpus construction: clean raw novel texts, cut them into ~100-word
excerpts, balance length distributions between classes, and assemble
shuffled, label-balanced datasets.

Conventions used throughout:

* An excerpt's sentence boundary is the full stop '.' only.  Question and
  exclamation marks do not terminate a chunk; they ride along until the
  next full stop.
* All length statistics use the population standard deviation so that
  repeated runs are reproducible bit for bit.
* Every operation is a pure function of (inputs, seed).
"""

from __future__ import annotations

import dataclasses
import json
import math
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    BalanceFailed,
    EmptyAfterFiltering,
    EmptyInput,
    MissingStartMarker,
    NoSentences,
)

HUMAN = "human"
AI = "ai"

ORIGIN_NOVEL = "novel_chunk"
ORIGIN_REWRITE = "rewrite"
ORIGIN_PROMPT = "prompt_only"

# Truncation targets for length balancing, in characters.  The range
# brackets the ~563-character mean of a 100-word excerpt.
DEFAULT_LENGTH_RANGE = (450.0, 675.0)

JSONL_FIELDS = ("excerpt_id", "text", "label", "origin", "source_excerpt_id",
                "char_len", "word_count")


@dataclass(frozen=True)
class RawBook:
    """A novel as downloaded: identifier, metadata, and the full text."""

    book_id: str
    title: str
    author: str
    body: str

    def __post_init__(self):
        if not self.body:
            raise ValueError(f"book {self.book_id!r} has an empty body")


@dataclass(frozen=True)
class Excerpt:
    """One labeled text chunk, the universal unit of data."""

    excerpt_id: str
    text: str
    label: str
    origin: str
    source_excerpt_id: str | None = None
    char_len: int = 0
    word_count: int = 0

    def __post_init__(self):
        if self.label not in (HUMAN, AI):
            raise ValueError(f"bad label {self.label!r}")
        if self.origin not in (ORIGIN_NOVEL, ORIGIN_REWRITE, ORIGIN_PROMPT):
            raise ValueError(f"bad origin {self.origin!r}")
        if (self.label == AI) != (self.origin in (ORIGIN_REWRITE, ORIGIN_PROMPT)):
            raise ValueError("label 'ai' must pair with origin rewrite/prompt_only")
        if (self.source_excerpt_id is not None) != (self.origin == ORIGIN_REWRITE):
            raise ValueError("source_excerpt_id present iff origin is 'rewrite'")
        if self.char_len != len(self.text):
            raise ValueError("char_len does not match text")
        if self.word_count < 1:
            raise ValueError("excerpt has no words")
        if self.origin == ORIGIN_NOVEL and not self.text.endswith("."):
            raise ValueError("novel chunks must end with a full stop")


def make_excerpt(excerpt_id: str, text: str, label: str, origin: str,
                 source_excerpt_id: str | None = None) -> Excerpt:
    """Build an Excerpt, deriving char_len and word_count from the text."""
    return Excerpt(excerpt_id=excerpt_id, text=text, label=label, origin=origin,
                   source_excerpt_id=source_excerpt_id,
                   char_len=len(text), word_count=len(text.split()))


@dataclass(frozen=True)
class LengthStats:
    """Character-length summary of a set of excerpts (population std)."""

    n: int
    mean_chars: float
    std_chars: float
    min_chars: int
    max_chars: int


@dataclass
class Dataset:
    """An ordered, shuffled collection of excerpts with its creation seed."""

    name: str
    excerpts: list[Excerpt]
    seed: int
    provenance: str = ""

    def __post_init__(self):
        ids = [e.excerpt_id for e in self.excerpts]
        if len(set(ids)) != len(ids):
            raise ValueError(f"dataset {self.name!r} has duplicate excerpt ids")

    def label_counts(self) -> dict[str, int]:
        counts = {HUMAN: 0, AI: 0}
        for e in self.excerpts:
            counts[e.label] += 1
        return counts

    def __len__(self) -> int:
        return len(self.excerpts)


@dataclass(frozen=True)
class BookEntry:
    """One row of a corpus manifest."""

    book_id: str
    title: str
    author: str
    path: str
    role: str  # base | unseen


# ---------------------------------------------------------------------------
# Boilerplate stripping
# ---------------------------------------------------------------------------

_START_MARKER = "*** START OF"
_END_MARKER = "*** END OF"
_ROMAN_RE = re.compile(r"^[ivxlcdm]+\.?$", re.IGNORECASE)
_NUMBER_RE = re.compile(r"^\d+\.?$")


def _is_heading(line: str) -> bool:
    s = line.strip()
    if not s:
        return False
    if _NUMBER_RE.match(s):
        return True
    if _ROMAN_RE.match(s):
        return True
    # Short all-uppercase lines are chapter or section headings.
    if s.upper() == s and any(c.isalpha() for c in s) and len(s.split()) <= 6:
        return True
    return False


def strip_boilerplate(raw: RawBook) -> str:
    """Return the book body with Gutenberg wrapper and headings removed.

    Drops everything up to and including the first line containing
    '*** START OF' and everything from the first line containing
    '*** END OF'.  Then removes lines that are pure numbers, pure Roman
    numerals, or short all-caps headings, collapses runs of blank lines,
    and normalizes whitespace inside paragraphs.

    Raises MissingStartMarker when the text mentions Project Gutenberg in
    its first 50 lines but carries no START marker (a malformed download).
    A text with no Gutenberg header at all is passed through the heading
    strip unchanged.
    """
    lines = raw.body.splitlines()

    start_idx = next((i for i, ln in enumerate(lines) if _START_MARKER in ln), None)
    if start_idx is None:
        head = "\n".join(lines[:50])
        if "Project Gutenberg" in head:
            raise MissingStartMarker(
                f"book {raw.book_id!r} looks like a Gutenberg file but has no START marker")
        body_lines = lines
    else:
        body_lines = lines[start_idx + 1:]

    end_idx = next((i for i, ln in enumerate(body_lines) if _END_MARKER in ln), None)
    if end_idx is not None:
        body_lines = body_lines[:end_idx]

    kept = [ln for ln in body_lines if not _is_heading(ln)]

    # Group into paragraphs at blank lines, then normalize each paragraph.
    paragraphs: list[str] = []
    current: list[str] = []
    for ln in kept:
        if ln.strip():
            current.append(ln)
        elif current:
            paragraphs.append(re.sub(r"\s+", " ", " ".join(current)).strip())
            current = []
    if current:
        paragraphs.append(re.sub(r"\s+", " ", " ".join(current)).strip())

    return "\n\n".join(p for p in paragraphs if p)


# ---------------------------------------------------------------------------
# Chunking
# ---------------------------------------------------------------------------

def split_sentences(body: str) -> tuple[list[str], str]:
    """Split a body into maximal '.'-terminated segments.

    Returns (sentences, trailing_fragment).  Each sentence is
    whitespace-normalized and ends with '.'.  The trailing fragment is
    whatever text follows the last full stop (possibly empty).
    """
    pieces = re.split(r"(?<=\.)", body)
    sentences: list[str] = []
    fragment = ""
    for piece in pieces:
        norm = re.sub(r"\s+", " ", piece).strip()
        if not norm:
            continue
        if norm.endswith("."):
            sentences.append(norm)
        else:
            fragment = norm  # only the final piece can lack a '.'
    return sentences, fragment


def chunk_text(book_id: str, body: str, target_words: int = 100) -> list[Excerpt]:
    """Cut a cleaned body into consecutive full-stop-terminated excerpts.

    Sentences are accumulated until the running word count first reaches
    target_words, at which point the chunk is emitted.  A final partial
    chunk is emitted too (it necessarily ends with '.'); any trailing text
    after the last full stop is discarded.
    """
    if target_words < 10:
        raise ValueError("target_words must be >= 10")
    if "." not in body:
        raise NoSentences(f"book {book_id!r} contains no full stop")

    sentences, _ = split_sentences(body)
    excerpts: list[Excerpt] = []
    current: list[str] = []
    words = 0
    for sent in sentences:
        current.append(sent)
        words += len(sent.split())
        if words >= target_words:
            text = " ".join(current)
            excerpts.append(make_excerpt(
                f"{book_id}-{len(excerpts):05d}", text, HUMAN, ORIGIN_NOVEL))
            current = []
            words = 0
    if current:
        text = " ".join(current)
        excerpts.append(make_excerpt(
            f"{book_id}-{len(excerpts):05d}", text, HUMAN, ORIGIN_NOVEL))
    return excerpts


# ---------------------------------------------------------------------------
# Length statistics and balancing
# ---------------------------------------------------------------------------

def length_stats(excerpts: Sequence[Excerpt]) -> LengthStats:
    """Population mean/std of char_len over a non-empty excerpt list."""
    if not excerpts:
        raise EmptyInput("length_stats needs at least one excerpt")
    lens = [e.char_len for e in excerpts]
    n = len(lens)
    mean = sum(lens) / n
    var = sum((x - mean) ** 2 for x in lens) / n
    return LengthStats(n=n, mean_chars=mean, std_chars=math.sqrt(var),
                       min_chars=min(lens), max_chars=max(lens))


@dataclass(frozen=True)
class BalanceReport:
    """Output of balance_lengths: surviving excerpts plus before/after stats."""

    human: list[Excerpt]
    ai: list[Excerpt]
    before_human: LengthStats
    before_ai: LengthStats
    after_human: LengthStats
    after_ai: LengthStats


def _truncate_at_nearest_stop(ex: Excerpt, target: float) -> Excerpt:
    """Cut an excerpt at the full stop whose position is closest to target."""
    stops = [i + 1 for i, ch in enumerate(ex.text) if ch == "."]
    if not stops:
        return ex
    best = min(stops, key=lambda pos: abs(pos - target))
    if best >= len(ex.text):
        return ex
    text = ex.text[:best]
    return dataclasses.replace(ex, text=text, char_len=len(text),
                               word_count=len(text.split()))


def _filter_outliers(excerpts: list[Excerpt], passes: int) -> list[Excerpt]:
    """Drop excerpts outside mean +/- 2 std, repeating until stable."""
    current = excerpts
    for _ in range(passes):
        if not current:
            break
        st = length_stats(current)
        lo, hi = st.mean_chars - 2 * st.std_chars, st.mean_chars + 2 * st.std_chars
        kept = [e for e in current if lo <= e.char_len <= hi]
        if len(kept) == len(current):
            break
        current = kept
    return current


def balance_lengths(human: Sequence[Excerpt], ai: Sequence[Excerpt],
                    rng_seed: int,
                    length_range: tuple[float, float] = DEFAULT_LENGTH_RANGE,
                    max_passes: int = 5,
                    mean_tolerance: float = 10.0,
                    std_ratio_tolerance: float = 1.5) -> BalanceReport:
    """Equalize the character-length distributions of the two classes.

    Step 1 truncates each human excerpt at the full stop nearest to a
    per-excerpt uniform random target drawn from length_range.  Passing an
    infinite range disables truncation.  Step 2 removes, per class,
    excerpts outside mean +/- 2 std, repeated until stable or max_passes.

    Raises BalanceFailed if the post-balance means differ by more than
    mean_tolerance or the std ratio exceeds std_ratio_tolerance, and
    EmptyAfterFiltering if a class loses every excerpt.
    """
    if not human or not ai:
        raise EmptyInput("balance_lengths needs non-empty excerpt lists")

    before_h = length_stats(human)
    before_a = length_stats(ai)

    rng = random.Random(rng_seed)
    lo, hi = length_range
    if math.isinf(lo) or math.isinf(hi):
        truncated = list(human)
    else:
        truncated = [_truncate_at_nearest_stop(e, rng.uniform(lo, hi)) for e in human]

    kept_h = _filter_outliers(truncated, max_passes)
    kept_a = _filter_outliers(list(ai), max_passes)
    if not kept_h or not kept_a:
        raise EmptyAfterFiltering("outlier removal emptied one class")

    after_h = length_stats(kept_h)
    after_a = length_stats(kept_a)

    gap = abs(after_h.mean_chars - after_a.mean_chars)
    stds = sorted([after_h.std_chars, after_a.std_chars])
    ratio = stds[1] / stds[0] if stds[0] > 0 else math.inf
    if stds == [0.0, 0.0]:
        ratio = 1.0
    if gap > mean_tolerance or ratio > std_ratio_tolerance:
        raise BalanceFailed(
            f"post-balance mean gap {gap:.1f} chars, std ratio {ratio:.2f}")

    return BalanceReport(human=kept_h, ai=kept_a,
                         before_human=before_h, before_ai=before_a,
                         after_human=after_h, after_ai=after_a)


# ---------------------------------------------------------------------------
# Dataset assembly and JSONL interchange
# ---------------------------------------------------------------------------

def assemble_dataset(name: str, human: Sequence[Excerpt], ai: Sequence[Excerpt],
                     seed: int, provenance: str = "") -> Dataset:
    """Mix equal numbers of human and AI excerpts into a shuffled dataset.

    The larger class is downsampled to the smaller one with the seeded
    RNG, then the union is shuffled with the same RNG.
    """
    if not human or not ai:
        raise EmptyInput("assemble_dataset needs excerpts of both labels")
    rng = random.Random(seed)
    h, a = list(human), list(ai)
    size = min(len(h), len(a))
    if len(h) > size:
        h = rng.sample(h, size)
    if len(a) > size:
        a = rng.sample(a, size)
    mixed = h + a
    rng.shuffle(mixed)
    return Dataset(name=name, excerpts=mixed, seed=seed, provenance=provenance)


def excerpt_to_record(e: Excerpt) -> dict:
    return {
        "excerpt_id": e.excerpt_id,
        "text": e.text,
        "label": e.label,
        "origin": e.origin,
        "source_excerpt_id": e.source_excerpt_id,
        "char_len": e.char_len,
        "word_count": e.word_count,
    }


def excerpt_from_record(rec: dict) -> Excerpt:
    return Excerpt(**{k: rec[k] for k in JSONL_FIELDS})


def write_jsonl(excerpts: Iterable[Excerpt], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for e in excerpts:
            fh.write(json.dumps(excerpt_to_record(e), ensure_ascii=False) + "\n")


def read_jsonl(path: str | Path) -> list[Excerpt]:
    out = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(excerpt_from_record(json.loads(line)))
    return out


def write_dataset(ds: Dataset, path: str | Path) -> None:
    write_jsonl(ds.excerpts, path)


def read_dataset(name: str, path: str | Path, seed: int = 0,
                 provenance: str = "") -> Dataset:
    return Dataset(name=name, excerpts=read_jsonl(path), seed=seed,
                   provenance=provenance)


def dataset_fingerprint(excerpts: Iterable[Excerpt]) -> str:
    """sha256 over the canonical JSONL serialization of the excerpts."""
    import hashlib

    h = hashlib.sha256()
    for e in excerpts:
        h.update(json.dumps(excerpt_to_record(e), sort_keys=True,
                            ensure_ascii=True).encode("ascii"))
        h.update(b"\n")
    return h.hexdigest()


def load_manifest(path: str | Path) -> list[BookEntry]:
    """Read a corpus manifest: a JSON list of book records."""
    with Path(path).open("r", encoding="utf-8") as fh:
        rows = json.load(fh)
    entries = [BookEntry(**row) for row in rows]
    ids = [b.book_id for b in entries]
    if len(set(ids)) != len(ids):
        raise ValueError("corpus manifest has duplicate book ids")
    return entries


def load_book(entry: BookEntry, base_dir: str | Path = ".") -> RawBook:
    text = (Path(base_dir) / entry.path).read_text(encoding="utf-8")
    return RawBook(book_id=entry.book_id, title=entry.title,
                   author=entry.author, body=text)
