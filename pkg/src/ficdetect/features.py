"""Bag-of-words features: tokenization, vocabulary construction, and sparse
document-term count matrices.

The tokenizer is deliberately minimal: lowercase the text, take maximal
runs of Unicode alphanumerics (underscore excluded), and drop single
characters.  No stop-word list, no stemming, and raw term frequencies
only, as required by the multinomial likelihood model downstream.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import EmptyVocabulary

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased alphanumeric runs of length >= 2, in document order."""
    return [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= 2]


class Vocabulary:
    """Immutable token-to-index map with dense lexicographic indices."""

    def __init__(self, tokens: Sequence[str]):
        self.tokens: list[str] = list(tokens)
        self.index: dict[str, int] = {t: i for i, t in enumerate(self.tokens)}
        if len(self.index) != len(self.tokens):
            raise ValueError("vocabulary has duplicate tokens")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.tokens == other.tokens

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.tokens, ensure_ascii=False),
                              encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        return cls(json.loads(Path(path).read_text(encoding="utf-8")))


def build_vocabulary(docs: Iterable[str]) -> Vocabulary:
    """Union of training-document tokens, indexed in lexicographic order.

    Must be called with training documents only; evaluation text is
    vectorized against the result and unseen tokens are dropped there.
    """
    seen: set[str] = set()
    n_docs = 0
    for doc in docs:
        n_docs += 1
        seen.update(tokenize(doc))
    if n_docs == 0:
        raise ValueError("build_vocabulary needs at least one document")
    if not seen:
        raise EmptyVocabulary("no token of length >= 2 in any training document")
    return Vocabulary(sorted(seen))


class DocTermMatrix:
    """Sparse per-document token counts over a fixed vocabulary.

    Rows are stored CSR-style; within a row, entries are sorted by token
    index and unique, and counts are at least 1.
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray,
                 data: np.ndarray, vocab_size: int):
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.indices = np.asarray(indices, dtype=np.int64)
        self.data = np.asarray(data, dtype=np.int64)
        self.vocab_size = int(vocab_size)
        if self.indices.size and self.indices.max() >= self.vocab_size:
            raise ValueError("token index out of vocabulary range")

    @classmethod
    def from_dense(cls, counts) -> "DocTermMatrix":
        arr = np.asarray(counts, dtype=np.int64)
        csr = sparse.csr_matrix(arr)
        return cls(csr.indptr, csr.indices, csr.data, arr.shape[1])

    @property
    def n_docs(self) -> int:
        return len(self.indptr) - 1

    def row(self, i: int) -> list[tuple[int, int]]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return list(zip(self.indices[lo:hi].tolist(), self.data[lo:hi].tolist()))

    def row_total(self, i: int) -> int:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return int(self.data[lo:hi].sum())

    def total_count(self) -> int:
        return int(self.data.sum())

    def to_csr(self) -> sparse.csr_matrix:
        return sparse.csr_matrix(
            (self.data.astype(np.float64), self.indices, self.indptr),
            shape=(self.n_docs, self.vocab_size))

    def to_dense(self) -> np.ndarray:
        return self.to_csr().toarray()

    def write_coo(self, path: str | Path) -> None:
        """Debug dump: one 'doc_idx token_idx count' line per entry."""
        with Path(path).open("w", encoding="utf-8") as fh:
            for i in range(self.n_docs):
                for j, c in self.row(i):
                    fh.write(f"{i} {j} {c}\n")


def vectorize(docs: Sequence[str], vocab: Vocabulary) -> DocTermMatrix:
    """Count in-vocabulary tokens per document; unseen tokens are dropped."""
    if len(vocab) == 0:
        raise ValueError("vectorize needs a non-empty vocabulary")
    indptr = [0]
    indices: list[int] = []
    data: list[int] = []
    for doc in docs:
        counts = Counter(vocab.index[t] for t in tokenize(doc) if t in vocab.index)
        for idx in sorted(counts):
            indices.append(idx)
            data.append(counts[idx])
        indptr.append(len(indices))
    return DocTermMatrix(np.array(indptr), np.array(indices, dtype=np.int64),
                         np.array(data, dtype=np.int64), len(vocab))


def vectorize_excerpts(excerpts, vocab: Vocabulary) -> DocTermMatrix:
    return vectorize([e.text for e in excerpts], vocab)
