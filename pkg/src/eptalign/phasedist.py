"""SimHash-based distance between the contributive-word sets of two
platforms' event phases.

Contributive sets are one-hot encoded over the ordered union vocabulary,
projected onto s shared Gaussian vectors, and reduced to +/-1 signatures;
the phase distance is 1 - cosine between signatures (range [0, 2]).  An
exact mode (cosine on the raw one-hot vectors) is available for small
vocabularies and as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEFAULT_SIGNATURE_LENGTH = 128


class PhaseDistError(Exception):
    pass


@dataclass
class ProjectionBank:
    """s Gaussian projection vectors over the union vocabulary.

    The same bank must be used for both platforms of an event pair;
    regeneration with the same seed and vocabulary is bit-identical.
    """

    s: int
    seed: int
    vocab: list[str]
    vectors: np.ndarray  # shape (s, |vocab|)

    @classmethod
    def create(cls, vocab: list[str], s: int = DEFAULT_SIGNATURE_LENGTH,
               seed: int = 0) -> "ProjectionBank":
        if not vocab:
            raise PhaseDistError("empty union vocabulary: no phase distance computable")
        rng = np.random.default_rng(seed)
        vectors = rng.standard_normal((s, len(vocab)))
        return cls(s=s, seed=seed, vocab=list(vocab), vectors=vectors)


def union_vocab(sets_a: list[set[str]], sets_b: list[set[str]]) -> list[str]:
    """Sorted, deduplicated union of both platforms' contributive sets."""
    union: set[str] = set()
    for s in sets_a:
        union |= s
    for s in sets_b:
        union |= s
    if not union:
        raise PhaseDistError("empty union vocabulary: no phase distance computable")
    return sorted(union)


def one_hot(words: set[str], vocab: list[str]) -> np.ndarray:
    vec = np.zeros(len(vocab), dtype=float)
    for i, w in enumerate(vocab):
        if w in words:
            vec[i] = 1.0
    if vec.sum() != len(words):
        missing = words - set(vocab)
        raise PhaseDistError(f"words outside the union vocabulary: {sorted(missing)!r}")
    return vec


def simhash(z: np.ndarray, bank: ProjectionBank) -> np.ndarray:
    """+/-1 signature: sign of each projection, with z.r == 0 -> +1."""
    if z.shape[0] != bank.vectors.shape[1]:
        raise PhaseDistError(
            f"one-hot dimension {z.shape[0]} does not match bank vocabulary "
            f"{bank.vectors.shape[1]}"
        )
    dots = bank.vectors @ z
    return np.where(dots >= 0.0, 1.0, -1.0)


def event_phase_distance(sig_a: np.ndarray, sig_b: np.ndarray) -> float:
    """1 - cosine between signatures; entries are +/-1 so this equals
    1 - (agreements - disagreements)/s."""
    if sig_a.shape != sig_b.shape:
        raise PhaseDistError("signature lengths differ")
    s = sig_a.shape[0]
    return float(1.0 - np.dot(sig_a, sig_b) / s)


def exact_phase_distance(set_a: set[str], set_b: set[str], vocab: list[str]) -> float:
    """Oracle mode: 1 - cosine of the raw one-hot vectors (1 for an empty
    side, mirroring a zero dot product)."""
    za = one_hot(set_a, vocab)
    zb = one_hot(set_b, vocab)
    if not set_a and not set_b:
        return 0.0
    if not set_a or not set_b:
        return 1.0
    # one-hot vectors: dot and squared norms are exact integers, so the
    # identical-set distance is exactly 0
    return float(1.0 - np.dot(za, zb) / math.sqrt(len(set_a) * len(set_b)))


def distance_matrix(sets_a: list[set[str]], sets_b: list[set[str]],
                    s: int = DEFAULT_SIGNATURE_LENGTH, seed: int = 0,
                    exact: bool = False) -> np.ndarray:
    """Pairwise phase-distance matrix over two platforms' phase lists,
    using one shared projection bank (or the exact one-hot cosine)."""
    vocab = union_vocab(sets_a, sets_b)
    if exact:
        out = np.zeros((len(sets_a), len(sets_b)))
        for i, ca in enumerate(sets_a):
            for j, cb in enumerate(sets_b):
                out[i, j] = exact_phase_distance(ca, cb, vocab)
        return out
    bank = ProjectionBank.create(vocab, s=s, seed=seed)
    sigs_a = [simhash(one_hot(c, vocab), bank) for c in sets_a]
    sigs_b = [simhash(one_hot(c, vocab), bank) for c in sets_b]
    out = np.zeros((len(sets_a), len(sets_b)))
    for i, sa in enumerate(sigs_a):
        for j, sb in enumerate(sigs_b):
            out[i, j] = event_phase_distance(sa, sb)
    return out
