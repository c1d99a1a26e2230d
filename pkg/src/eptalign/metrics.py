"""Interpretation metrics over an alignment: time-irrelevant shape and
altitude similarity, and the average leading time of each platform."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eptalign.dtw import Alignment, derivative
from eptalign.epts import Epts


@dataclass(frozen=True)
class MetricsReport:
    psi_S: float
    psi_A: float
    delta_A: float
    delta_B: float
    match_count: int
    resolution: int  # delta values are expressed in this unit (seconds)


def shape_similarity(alignment: Alignment, epts_a: Epts, epts_b: Epts) -> float:
    """1 minus the mean derivative distance over matches (same estimator
    and endpoint rule as the alignment engine)."""
    da = derivative(np.asarray(epts_a.points, dtype=float))
    db = derivative(np.asarray(epts_b.points, dtype=float))
    total = sum(abs(da[i] - db[j]) for i, j in alignment.matches)
    return 1.0 - total / len(alignment.matches)


def altitude_similarity(alignment: Alignment, epts_a: Epts, epts_b: Epts) -> float:
    """1 minus the mean vertical-line distance over matches."""
    a = epts_a.points
    b = epts_b.points
    total = sum(abs(a[i] - b[j]) for i, j in alignment.matches)
    return 1.0 - total / len(alignment.matches)


def leading_time(alignment: Alignment, side: str, n_side: int) -> float:
    """Average leading time of one platform over the other.

    Side 'A': sum of (i - j) over matches with i > j, divided by the
    length of series A; symmetric for side 'B'.  Unit = the temporal
    resolution of the series.
    """
    if side not in ("A", "B"):
        raise ValueError("side must be 'A' or 'B'")
    if side == "A":
        total = sum(i - j for i, j in alignment.matches if i > j)
    else:
        total = sum(j - i for i, j in alignment.matches if j > i)
    return total / n_side


def compute_metrics(alignment: Alignment, epts_a: Epts, epts_b: Epts) -> MetricsReport:
    return MetricsReport(
        psi_S=shape_similarity(alignment, epts_a, epts_b),
        psi_A=altitude_similarity(alignment, epts_a, epts_b),
        delta_A=leading_time(alignment, "A", len(epts_a.points)),
        delta_B=leading_time(alignment, "B", len(epts_b.points)),
        match_count=len(alignment.matches),
        resolution=epts_a.resolution,
    )
