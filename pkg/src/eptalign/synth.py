"""Synthetic corpora and series for benchmarks and tests.

The noise benchmark rebuilds the controlled robustness experiment at
desk scale: six phases with an identical base corpus each, plus
off-topic noise records injected at fixed per-phase ratios.

The base corpus follows an exact power law (word r appears
floor(H * r**-alpha) times per phase), so the pooled rank-frequency
curve is genuinely Zipf-like and the cutoff threshold separates the
event head from the injected noise tail.
"""

from __future__ import annotations

import json

import numpy as np

from eptalign.ingest import Record

# noise records added per phase, per 50_000 base records per phase
NOISE_COUNTS_PER_50K = (0, 1063, 2235, 3507, 4689, 6026)
BASE_RECORDS_PER_50K = 50_000

# per-phase scale of the base power law at scale=1 (tuned so scale=0.01
# yields ~500 base records/phase of 5 tokens, and the fitted cutoff
# lands between the base head and the noise tail)
BASE_H_PER_PHASE = 95_000
BASE_ALPHA = 1.4
NOISE_VOCAB_SIZE = 300
TOKENS_PER_RECORD = 5

DAY = 86_400


def zipf_probabilities(size: int, alpha: float = 2.0) -> np.ndarray:
    p = 1.0 / np.arange(1, size + 1, dtype=float) ** alpha
    return p / p.sum()


def power_law_counts(h: float, alpha: float) -> np.ndarray:
    """floor(h * r**-alpha) per rank r, truncated where the count hits 0."""
    r_max = max(1, int(h ** (1.0 / alpha)) + 1)
    counts = np.floor(h / np.arange(1, r_max + 1, dtype=float) ** alpha).astype(int)
    return counts[counts >= 1]


def _chunk_records(tokens: list[str], platform: str, t0: int,
                   resolution: int, size: int = TOKENS_PER_RECORD) -> list[Record]:
    records = []
    for idx in range(0, len(tokens), size):
        records.append(Record(
            timestamp=t0 + (idx // size) % resolution,
            tokens=tuple(tokens[idx:idx + size]),
            platform=platform,
        ))
    return records


def make_noise_corpus(
    scale: float = 0.01,
    seed: int = 0,
    resolution: int = DAY,
) -> tuple[list[Record], tuple[int, int], int]:
    """Six-phase corpus: an identical exact-power-law base per phase, plus
    uniform noise from a disjoint vocabulary at the benchmark ratios
    scaled by ``scale``.  Returns (records, span, resolution).
    """
    if scale <= 0:
        raise ValueError("scale must be positive")
    n_phases = len(NOISE_COUNTS_PER_50K)
    base_counts = power_law_counts(BASE_H_PER_PHASE * scale, BASE_ALPHA)
    if base_counts.sum() < TOKENS_PER_RECORD:
        raise ValueError(f"scale {scale} leaves no base records")
    noise_per_phase = [round(c * scale) for c in NOISE_COUNTS_PER_50K]
    rng = np.random.default_rng(seed)

    # shared prefix letter guarantees positive character-cosine between
    # any two words of the same vocabulary
    base_tokens: list[str] = []
    for rank, count in enumerate(base_counts):
        base_tokens.extend([f"e{rank:04d}"] * int(count))
    noise_vocab = np.array([f"n{i:04d}" for i in range(NOISE_VOCAB_SIZE)])

    records: list[Record] = []
    for phase in range(n_phases):
        t0 = phase * resolution
        records.extend(_chunk_records(base_tokens, "sim", t0, resolution))
        noise_draw = rng.choice(noise_vocab,
                                size=noise_per_phase[phase] * TOKENS_PER_RECORD)
        records.extend(_chunk_records(list(noise_draw), "sim", t0, resolution))
    span = (0, n_phases * resolution)
    return records, span, resolution


def write_records_jsonl(records: list[Record], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({"ts": rec.timestamp, "tokens": list(rec.tokens)}) + "\n")


def coefficient_of_variation(values: list[float]) -> float:
    arr = np.asarray(values, dtype=float)
    mean = arr.mean()
    if mean == 0.0:
        return 0.0
    return float(arr.std() / mean)
