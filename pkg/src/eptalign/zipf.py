"""Power-law fit of the word rank-frequency distribution and the cutoff
threshold that discards long-tail noise words.

The rank-frequency table of the pooled event corpus is fitted by OLS in
log-log space (f = H * r**-alpha).  The cutoff is the frequency at the
median rank of the fitted distribution: th = 0.5 * H * 2**(1/(1-alpha)),
defined for alpha > 1.  Near-flat fits fall back to a top-decile rank
cutoff.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

DEGENERATE_ALPHA = 1.05


class ZipfError(Exception):
    pass


@dataclass(frozen=True)
class PowerLawFit:
    H: float
    alpha: float
    r_half: float | None
    th: float
    degenerate: bool
    vocab_size: int


def rank_frequency(pooled: Counter) -> list[tuple[int, int]]:
    """(rank, frequency) pairs sorted by frequency descending.

    Ranks are 1..V; frequency ties are broken by lexicographic word order
    so the table is deterministic.
    """
    if not pooled:
        raise ZipfError("empty vocabulary: nothing to rank")
    items = sorted(pooled.items(), key=lambda kv: (-kv[1], kv[0]))
    return [(r + 1, f) for r, (_, f) in enumerate(items)]


def fit_power_law(rank_freq: list[tuple[int, int]]) -> PowerLawFit:
    """OLS on (ln r, ln f): slope = -alpha, intercept = ln H."""
    if len(rank_freq) < 3:
        raise ZipfError("corpus too small for Zipf fit (need >= 3 distinct ranks)")
    r = np.array([p[0] for p in rank_freq], dtype=float)
    f = np.array([p[1] for p in rank_freq], dtype=float)
    slope, intercept = np.polyfit(np.log(r), np.log(f), 1)
    alpha = -float(slope)
    H = float(math.exp(intercept))
    degenerate = alpha <= DEGENERATE_ALPHA
    if degenerate:
        # median of the fitted law is undefined for alpha <= 1; cut at the
        # top-decile rank instead
        r_half = None
        cutoff_rank = max(1, math.ceil(len(rank_freq) / 10))
        th = float(rank_freq[cutoff_rank - 1][1])
    else:
        r_half = 2.0 ** (1.0 / (alpha - 1.0))
        th = 0.5 * H * 2.0 ** (1.0 / (1.0 - alpha))
    return PowerLawFit(H=H, alpha=alpha, r_half=r_half, th=th,
                       degenerate=degenerate, vocab_size=len(rank_freq))


def cutoff_threshold(fit: PowerLawFit) -> float:
    return fit.th


def filter_vocabulary(pooled: Counter, th: float) -> set[str]:
    """Words with pooled frequency >= th (boundary kept)."""
    survivors = {w for w, f in pooled.items() if f >= th}
    if not survivors:
        raise ZipfError(
            "cutoff threshold removed the whole vocabulary; "
            "try a lower temporal resolution or a larger corpus"
        )
    return survivors
