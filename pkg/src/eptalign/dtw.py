"""Dynamic time warping over popularity series: cost matrices, the
cumulated-cost recurrence, backtracking, the eight method variants, and
the far-match / singularity detectors.

Variants (registry keys):

    dtw        vertical-line distance |a_i - b_j|
    ddtw       derivative distance
    dtw-bias   dtw with diagonal-bias cumulation
    ddtw-bias  ddtw with diagonal-bias cumulation
    wdtw       dtw plus sigmoid temporal weight
    wddtw      ddtw plus sigmoid temporal weight
    dtw-cd     compound distance (geometric mean of phase, vertical and
               derivative distances)
    wdtw-cd    compound distance plus sigmoid temporal weight
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from eptalign import phasedist
from eptalign.epts import Epts

DEFAULT_BIAS = (1.2, 1.0, 1.2)
DEFAULT_ETA = 10.0
DEFAULT_TAU = 2.0
DEFAULT_FANOUT_LIMIT = 4

# name -> (base distance, diagonal bias, temporal weight)
VARIANTS: dict[str, tuple[str, bool, bool]] = {
    "dtw": ("L", False, False),
    "ddtw": ("D", False, False),
    "dtw-bias": ("L", True, False),
    "ddtw-bias": ("D", True, False),
    "wdtw": ("L", False, True),
    "wddtw": ("D", False, True),
    "dtw-cd": ("C", False, False),
    "wdtw-cd": ("C", False, True),
}

# distance components entering each variant's per-cell cost; used as the
# complexity tie-breaker when ranking methods
COMPONENT_COUNT = {
    "dtw": 1, "ddtw": 1, "dtw-bias": 1, "ddtw-bias": 1,
    "wdtw": 2, "wddtw": 2, "dtw-cd": 3, "wdtw-cd": 4,
}


class AlignError(Exception):
    pass


@dataclass(frozen=True)
class VariantSpec:
    name: str
    bias: tuple[float, float, float] = DEFAULT_BIAS
    eta: float = DEFAULT_ETA
    tau: float = DEFAULT_TAU
    signature_length: int = phasedist.DEFAULT_SIGNATURE_LENGTH
    seed: int = 0
    exact_phase_dist: bool = False

    def __post_init__(self):
        if self.name not in VARIANTS:
            raise ValueError(f"unknown variant {self.name!r}; choose from {sorted(VARIANTS)}")
        if any(b <= 0 for b in self.bias):
            raise ValueError("bias components must be positive")
        if self.eta <= 0:
            raise ValueError("eta must be positive")
        if self.tau < 0:
            raise ValueError("tau must be nonnegative")

    @property
    def base(self) -> str:
        return VARIANTS[self.name][0]

    @property
    def has_bias(self) -> bool:
        return VARIANTS[self.name][1]

    @property
    def has_omega(self) -> bool:
        return VARIANTS[self.name][2]


@dataclass
class Alignment:
    matches: list[tuple[int, int]]   # 0-based, (1,1)..(n,m) in report terms
    total_cost: float
    variant: str
    params: dict = field(default_factory=dict)
    n: int = 0
    m: int = 0


def dist_L(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """|a_i - b_j| for all cells."""
    return np.abs(a[:, None] - b[None, :])


def derivative(series: np.ndarray) -> np.ndarray:
    """Estimated derivative, robust to trend:

        D(x_i) = ((x_i - x_{i-1}) + (x_{i+1} - x_{i-1})/2) / 2

    Endpoints replicate the adjacent interior estimate.  A length-2
    series falls back to the plain difference at both points.
    """
    x = np.asarray(series, dtype=float)
    if x.shape[0] < 2:
        raise AlignError("derivative needs a series of length >= 2")
    if x.shape[0] == 2:
        d = x[1] - x[0]
        return np.array([d, d])
    interior = ((x[1:-1] - x[:-2]) + (x[2:] - x[:-2]) / 2.0) / 2.0
    return np.concatenate([[interior[0]], interior, [interior[-1]]])


def dist_D(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    da = derivative(a)
    db = derivative(b)
    return np.abs(da[:, None] - db[None, :])


def dist_C(e: np.ndarray, l: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Compound distance: cube root of the product of the phase,
    vertical and derivative distances."""
    return np.cbrt(e * l * d)


def temporal_weight(i: int, j: int, eta: float = DEFAULT_ETA, tau: float = DEFAULT_TAU) -> float:
    """Sigmoid penalty on the temporal lag: 1/(1 + exp(-eta*(|i-j| - tau)))."""
    return 1.0 / (1.0 + math.exp(-eta * (abs(i - j) - tau)))


def temporal_weight_matrix(n: int, m: int, eta: float, tau: float) -> np.ndarray:
    lag = np.abs(np.arange(n)[:, None] - np.arange(m)[None, :])
    return 1.0 / (1.0 + np.exp(-eta * (lag - tau)))


def cost_matrices(
    epts_a: Epts,
    epts_b: Epts,
    spec: VariantSpec,
    phase_dist: np.ndarray | None = None,
) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Per-cell cost grid for a variant, plus its component matrices."""
    a = np.asarray(epts_a.points, dtype=float)
    b = np.asarray(epts_b.points, dtype=float)
    components: dict[str, np.ndarray] = {}
    base = spec.base
    if base == "L":
        g = dist_L(a, b)
        components["L"] = g
    elif base == "D":
        g = dist_D(a, b)
        components["D"] = g
    else:  # compound
        if phase_dist is None:
            if not epts_a.contributive_sets or not epts_b.contributive_sets:
                raise AlignError("phase distance requires contributive sets")
            phase_dist = phasedist.distance_matrix(
                epts_a.contributive_sets, epts_b.contributive_sets,
                s=spec.signature_length, seed=spec.seed,
                exact=spec.exact_phase_dist,
            )
        l = dist_L(a, b)
        d = dist_D(a, b)
        components["E"] = phase_dist
        components["L"] = l
        components["D"] = d
        g = dist_C(phase_dist, l, d)
    if spec.has_omega:
        w = temporal_weight_matrix(len(a), len(b), spec.eta, spec.tau)
        components["omega"] = w
        g = g + w
    return g, components


def cumulate(G: np.ndarray, bias: tuple[float, float, float] | None = None) -> np.ndarray:
    """Cumulated cost grid.

    First row/column are prefix sums; interior cells take the cheapest of
    the three predecessors, each multiplied by its bias component when a
    bias vector is given ((b1, b2, b3) for up, diagonal, left).
    """
    n, m = G.shape
    b1, b2, b3 = bias if bias is not None else (1.0, 1.0, 1.0)
    Gs = np.empty_like(G, dtype=float)
    Gs[0, :] = np.cumsum(G[0, :])
    Gs[:, 0] = np.cumsum(G[:, 0])
    for i in range(1, n):
        row = Gs[i - 1]
        for j in range(1, m):
            Gs[i, j] = G[i, j] + min(b1 * row[j], b2 * row[j - 1], b3 * Gs[i, j - 1])
    return Gs


def backtrack(Gs: np.ndarray, bias: tuple[float, float, float] | None = None) -> list[tuple[int, int]]:
    """Greedy walk from (n,m) back to (1,1) over the cumulated grid.

    On the boundary only the feasible move is taken.  Ties prefer the
    diagonal, then the vertical (i-1, j), then the horizontal (i, j-1).
    """
    n, m = Gs.shape
    b1, b2, b3 = bias if bias is not None else (1.0, 1.0, 1.0)
    i, j = n - 1, m - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag = b2 * Gs[i - 1, j - 1]
            up = b1 * Gs[i - 1, j]
            left = b3 * Gs[i, j - 1]
            best = min(diag, up, left)
            if diag == best:
                i, j = i - 1, j - 1
            elif up == best:
                i -= 1
            else:
                j -= 1
        path.append((i, j))
    path.reverse()
    return path


def align(
    epts_a: Epts,
    epts_b: Epts,
    spec: VariantSpec,
    phase_dist: np.ndarray | None = None,
) -> Alignment:
    """Run one DTW variant end to end: cost grid, cumulation, backtrack."""
    n, m = len(epts_a.points), len(epts_b.points)
    min_len = 3 if spec.base in ("D", "C") else 2
    if n < min_len or m < min_len:
        raise AlignError(
            f"variant {spec.name!r} needs series of length >= {min_len}, got {n} and {m}"
        )
    G, _ = cost_matrices(epts_a, epts_b, spec, phase_dist)
    bias = spec.bias if spec.has_bias else None
    Gs = cumulate(G, bias)
    matches = backtrack(Gs, bias)
    params = {
        "bias": list(spec.bias) if spec.has_bias else None,
        "eta": spec.eta if spec.has_omega else None,
        "tau": spec.tau if spec.has_omega else None,
        "s": spec.signature_length if spec.base == "C" and not spec.exact_phase_dist else None,
        "seed": spec.seed if spec.base == "C" and not spec.exact_phase_dist else None,
        "exact_phase_dist": spec.exact_phase_dist if spec.base == "C" else None,
    }
    return Alignment(
        matches=matches,
        total_cost=float(Gs[n - 1, m - 1]),
        variant=spec.name,
        params=params,
        n=n,
        m=m,
    )


def detect_singularity(alignment: Alignment, fanout_limit: int = DEFAULT_FANOUT_LIMIT) -> list[tuple[str, int]]:
    """Data points (on either axis) matched to more than ``fanout_limit``
    counterparts; returned as ('A'|'B', 0-based index)."""
    if fanout_limit is None or math.isinf(fanout_limit):
        return []
    count_a: dict[int, int] = {}
    count_b: dict[int, int] = {}
    for i, j in alignment.matches:
        count_a[i] = count_a.get(i, 0) + 1
        count_b[j] = count_b.get(j, 0) + 1
    flagged = [("A", i) for i, c in sorted(count_a.items()) if c > fanout_limit]
    flagged += [("B", j) for j, c in sorted(count_b.items()) if c > fanout_limit]
    return flagged


def detect_far_match(alignment: Alignment, max_lag: int) -> list[tuple[int, int]]:
    """Matches whose temporal lag |i-j| exceeds ``max_lag``."""
    return [(i, j) for i, j in alignment.matches if abs(i - j) > max_lag]
