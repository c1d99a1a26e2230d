"""Pairwise word similarity.

Combines semantic similarity (cosine in an event-corpus and a
general-corpus embedding, mixed by beta) with lexical similarity
(cosine over character-count vectors), mixed by gamma:

    sim = gamma * sem + (1 - gamma) * str
"""

from __future__ import annotations

import hashlib
import logging
import math
import threading
from collections import Counter
from dataclasses import dataclass

import numpy as np

log = logging.getLogger(__name__)


class EmbeddingError(Exception):
    pass


@dataclass(frozen=True)
class SimilarityParams:
    beta: float = 0.7
    gamma: float = 0.02

    def __post_init__(self):
        if not (0.0 <= self.beta <= 1.0):
            raise ValueError(f"beta must be in [0,1], got {self.beta}")
        if not (0.0 <= self.gamma <= 1.0):
            raise ValueError(f"gamma must be in [0,1], got {self.gamma}")


class EmbeddingSet:
    """Immutable word -> unit-normalizable dense vector table."""

    def __init__(self, dim: int, table: dict[str, np.ndarray], label: str):
        self.dim = dim
        self.table = table
        self.label = label

    def get(self, word: str) -> np.ndarray | None:
        return self.table.get(word)

    def __contains__(self, word: str) -> bool:
        return word in self.table

    def __len__(self) -> int:
        return len(self.table)


def load_embeddings(path: str, label: str) -> EmbeddingSet:
    """Parse word-vector text format: header "V dim", then one word and
    dim floats per line.  Duplicate words: last wins, with a warning.
    """
    table: dict[str, np.ndarray] = {}
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise EmbeddingError(f"{path}: bad header, expected 'V dim'")
        vocab_size, dim = int(header[0]), int(header[1])
        if vocab_size == 0:
            raise EmbeddingError(f"{path}: empty embedding file (V=0)")
        for lineno, line in enumerate(fh, start=2):
            parts = line.rstrip("\n").split(" ")
            if len(parts) != dim + 1:
                raise EmbeddingError(
                    f"{path}:{lineno}: expected {dim} components, got {len(parts) - 1}"
                )
            word = parts[0]
            vec = np.array([float(x) for x in parts[1:]], dtype=float)
            if not np.all(np.isfinite(vec)):
                raise EmbeddingError(f"{path}:{lineno}: non-finite component")
            if not np.any(vec):
                raise EmbeddingError(f"{path}:{lineno}: zero vector for {word!r}")
            if word in table:
                log.warning("%s: duplicate entry for %r, keeping the last", path, word)
            table[word] = vec
    return EmbeddingSet(dim=dim, table=table, label=label)


class HashEmbeddings:
    """Deterministic pseudo-embedding provider for hermetic runs.

    Maps every word to a unit vector derived from a seeded hash, so the
    full pipeline can run without external embedding files.  In-vocabulary
    for every word by construction.
    """

    def __init__(self, dim: int = 32, seed: int = 0, label: str = "hash"):
        self.dim = dim
        self.seed = seed
        self.label = label
        self._cache: dict[str, np.ndarray] = {}

    def get(self, word: str) -> np.ndarray:
        vec = self._cache.get(word)
        if vec is None:
            digest = hashlib.sha256(f"{self.seed}:{word}".encode()).digest()
            rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
            vec = rng.standard_normal(self.dim)
            vec /= np.linalg.norm(vec)
            self._cache[word] = vec
        return vec

    def __contains__(self, word: str) -> bool:
        return True


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def sem(w_i: str, w_j: str, emb_event, emb_general, beta: float) -> float:
    """Semantic similarity: beta-weighted mix of the event-corpus and
    general-corpus cosines.

    Out-of-vocabulary policy: if the pair is resolvable in only one
    corpus, that corpus's cosine is used with full weight; if in neither,
    sem = 0.
    """
    cos_r = cos_d = None
    if emb_event is not None:
        u, v = emb_event.get(w_i), emb_event.get(w_j)
        if u is not None and v is not None:
            cos_r = _cosine(u, v)
    if emb_general is not None:
        u, v = emb_general.get(w_i), emb_general.get(w_j)
        if u is not None and v is not None:
            cos_d = _cosine(u, v)
    if cos_r is not None and cos_d is not None:
        return beta * cos_r + (1.0 - beta) * cos_d
    if cos_r is not None:
        return cos_r
    if cos_d is not None:
        return cos_d
    return 0.0


def str_sim(w_i: str, w_j: str) -> float:
    """Cosine over character-count vectors (Unicode code points)."""
    ci = Counter(w_i)
    cj = Counter(w_j)
    if not ci or not cj:
        return 0.0
    dot = sum(ci[c] * cj[c] for c in ci.keys() & cj.keys())
    if dot == 0:
        return 0.0
    ni = math.sqrt(sum(n * n for n in ci.values()))
    nj = math.sqrt(sum(n * n for n in cj.values()))
    return dot / (ni * nj)


def sim(w_i: str, w_j: str, params: SimilarityParams, emb_event=None, emb_general=None) -> float:
    s = sem(w_i, w_j, emb_event, emb_general, params.beta)
    return params.gamma * s + (1.0 - params.gamma) * str_sim(w_i, w_j)


class WordSimilarity:
    """Memoizing similarity provider.

    Vocabularies repeat across phases, so pairwise values are cached per
    (event, platform) run.  Cache inserts are guarded by a lock so phase
    graphs may be built concurrently.
    """

    def __init__(self, params: SimilarityParams, emb_event=None, emb_general=None):
        self.params = params
        self.emb_event = emb_event
        self.emb_general = emb_general
        self._cache: dict[tuple[str, str], float] = {}
        self._lock = threading.Lock()

    def __call__(self, w_i: str, w_j: str) -> float:
        key = (w_i, w_j) if w_i <= w_j else (w_j, w_i)
        val = self._cache.get(key)
        if val is None:
            val = sim(key[0], key[1], self.params, self.emb_event, self.emb_general)
            with self._lock:
                self._cache[key] = val
        return val
