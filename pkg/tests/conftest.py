"""Shared fixtures: pathology series pairs and random EPTS generators."""

from __future__ import annotations

import numpy as np
import pytest

from eptalign.epts import Epts


def make_epts(points, sets=None, platform="x", resolution=86400):
    pts = np.asarray(points, dtype=float)
    return Epts(
        platform=platform,
        resolution=resolution,
        span=(0, resolution * len(pts)),
        points=list(pts),
        contributive_sets=list(sets) if sets is not None else [],
    )


def sliding_sets(n, prefix="w", width=3, shift=0):
    """Window-of-words contributive sets; ``shift`` delays the content."""
    vocab = [f"{prefix}{k}" for k in range(n + width + abs(shift))]
    return [set(vocab[max(0, i - shift):max(0, i - shift) + width]) for i in range(n)]


def random_epts_pair(rng, max_len=8, min_len=3):
    """Random normalized pair with contributive sets, for oracle sweeps."""
    n = int(rng.integers(min_len, max_len + 1))
    m = int(rng.integers(min_len, max_len + 1))
    a = rng.random(n) + 1e-3
    b = rng.random(m) + 1e-3
    a /= a.sum()
    b /= b.sum()
    vocab = [f"v{k}" for k in range(12)]
    sets_a = [set(rng.choice(vocab, size=int(rng.integers(1, 5)), replace=False)) for _ in range(n)]
    sets_b = [set(rng.choice(vocab, size=int(rng.integers(1, 5)), replace=False)) for _ in range(m)]
    return make_epts(a, sets_a, platform="a"), make_epts(b, sets_b, platform="b")


def singularity_pair(n=20):
    """Plateau-vs-spike pair: classic DTW fans one point out over the
    plateau; the temporally weighted compound variant does not."""
    h = 0.1
    a = [h] + [(1.0 - h) / (n - 1)] * (n - 1)
    b = [h] * 6 + [(1.0 - 6 * h) / (n - 6)] * (n - 6)
    sets = sliding_sets(n)
    return make_epts(a, sets, platform="a"), make_epts(b, sets, platform="b")


def far_match_pair(n=16):
    """Shifted-peak pair with true lag 2 in the phase content: platform B
    reports the same event two steps late (contributive sets shifted by 2),
    but its volume peak surfaces much later, at index 12 instead of 3.
    Unconstrained variants chase the late peak (lag 9); the sigmoid
    temporal weight pins the alignment near the diagonal."""
    motif = [0.05, 0.30, 0.05]
    a = [0.02] * n
    a[2:5] = motif
    b = [0.02] * n
    b[11:14] = motif
    a = list(np.asarray(a) / np.sum(a))
    b = list(np.asarray(b) / np.sum(b))
    sets_a = sliding_sets(n)
    sets_b = [set(sets_a[max(0, i - 2)]) for i in range(n)]
    # the late peak carries the same phase content as the true peak
    sets_b[11] = set(sets_a[2])
    sets_b[12] = set(sets_a[3])
    sets_b[13] = set(sets_a[4])
    return make_epts(a, sets_a, platform="a"), make_epts(b, sets_b, platform="b")


@pytest.fixture
def rng():
    return np.random.default_rng(0)
