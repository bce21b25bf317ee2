"""Persistent experiment memory with embedding retrieval.

Records pair free text with an embedding vector and a short tag (the
3-token window of the content whose embedding lies closest to the whole
content).  Retrieval ranks records by cosine similarity against a query
embedding.  The default embedder is a deterministic feature-hashed
bag-of-words vector so stores behave identically offline and across
processes; production deployments can plug in an API-backed embedder.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import numpy as np

DEFAULT_DIM = 256
DEFAULT_TOP_K = 2
TAG_TOKENS = 3


class Embedder(Protocol):
    dim: int

    def embed(self, text: str) -> np.ndarray: ...


def tokenize(text: str) -> list[str]:
    return text.lower().split()


class HashedBagEmbedder:
    """L2-normalised bag-of-tokens vector with hashed feature indices.

    The token hash is content-derived (not Python's randomised ``hash``),
    so vectors are stable across interpreter runs.
    """

    def __init__(self, dim: int = DEFAULT_DIM) -> None:
        if dim <= 0:
            raise ValueError("embedding dimension must be positive")
        self.dim = dim

    def _index(self, token: str) -> int:
        digest = hashlib.sha1(token.encode("utf-8")).digest()
        return int.from_bytes(digest[:8], "big") % self.dim

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for token in tokenize(text):
            vec[self._index(token)] += 1.0
        norm = np.linalg.norm(vec)
        if norm > 0:
            vec /= norm
        return vec


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


@dataclass
class MemoryRecord:
    id: int
    content: str
    embedding: np.ndarray
    tag: str
    created_step: int


def extract_tag(content: str, embedder: Embedder) -> str:
    """The contiguous 3-token window most similar to the whole content.

    Contents shorter than three tokens are their own tag; similarity ties
    resolve to the earliest window.
    """
    tokens = tokenize(content)
    if len(tokens) <= TAG_TOKENS:
        return content.strip()
    full = embedder.embed(content)
    best_tag = ""
    best_score = -np.inf
    for i in range(len(tokens) - TAG_TOKENS + 1):
        window = " ".join(tokens[i:i + TAG_TOKENS])
        score = cosine_similarity(embedder.embed(window), full)
        if score > best_score:
            best_score = score
            best_tag = window
    return best_tag


class MemoryStore:
    """Append-only record store persisted as one JSON document.

    Writes go through a temp file and an atomic rename, so a crash can
    lose the newest record but never corrupt the store.
    """

    def __init__(self, path: str | Path | None = None,
                 embedder: Embedder | None = None) -> None:
        self.path = Path(path) if path is not None else None
        self.embedder = embedder or HashedBagEmbedder()
        self.records: list[MemoryRecord] = []
        if self.path is not None and self.path.exists() and self.path.stat().st_size > 0:
            self._load()

    def _load(self) -> None:
        payload = json.loads(self.path.read_text())
        if payload.get("dim") != self.embedder.dim:
            raise ValueError(
                f"store at {self.path} has dimension {payload.get('dim')}, "
                f"embedder expects {self.embedder.dim}"
            )
        self.records = [
            MemoryRecord(
                id=r["id"],
                content=r["content"],
                embedding=np.asarray(r["embedding"], dtype=np.float64),
                tag=r["tag"],
                created_step=r["created_step"],
            )
            for r in payload["records"]
        ]

    def _flush(self) -> None:
        if self.path is None:
            return
        payload = {
            "dim": self.embedder.dim,
            "records": [
                {
                    "id": r.id,
                    "content": r.content,
                    "embedding": r.embedding.tolist(),
                    "tag": r.tag,
                    "created_step": r.created_step,
                }
                for r in self.records
            ],
        }
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".memory-")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def write(self, content: str, created_step: int = 0) -> int:
        """Embed, tag and persist a record; returns the new record id."""
        if not content or not content.strip():
            raise ValueError("cannot store empty memory content")
        record = MemoryRecord(
            id=self.records[-1].id + 1 if self.records else 0,
            content=content,
            embedding=self.embedder.embed(content),
            tag=extract_tag(content, self.embedder),
            created_step=created_step,
        )
        self.records.append(record)
        self._flush()
        return record.id

    def read(self, query: str, k: int = DEFAULT_TOP_K) -> list[MemoryRecord]:
        """Top-k records by cosine similarity to the query; ties favour older ids."""
        if k < 1:
            raise ValueError("k must be at least 1")
        query_vec = self.embedder.embed(query)
        ranked = sorted(
            self.records,
            key=lambda r: (-cosine_similarity(query_vec, r.embedding), r.id),
        )
        return ranked[:k]

    def state_summary(self) -> tuple[int, list[str]]:
        """(record count, tags deduplicated in first-seen order)."""
        seen: list[str] = []
        for record in self.records:
            if record.tag not in seen:
                seen.append(record.tag)
        return len(self.records), seen
