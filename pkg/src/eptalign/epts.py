"""Event popularity time series: assembly, normalization, baselines,
and the JSON persistence format shared with the alignment stage."""

from __future__ import annotations

import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass, field

from eptalign.ingest import EventPhase

log = logging.getLogger(__name__)


@dataclass
class Epts:
    """Normalized popularity series for one (event, platform)."""

    platform: str
    resolution: int
    span: tuple[int, int]
    points: list[float]                      # normalized popularity per phase
    contributive_sets: list[set[str]] = field(default_factory=list)
    method: str = "tfsw"
    all_zero: bool = False

    def __len__(self) -> int:
        return len(self.points)


def phase_popularity(phase: EventPhase, weights: dict[str, float]) -> float:
    """pop(E_i) = sum over words of fre(w) * weight(w).

    ``weights`` holds the nonzero (contributive) weights; everything else
    contributes zero.
    """
    return float(sum(phase.freq[w] * wt for w, wt in weights.items()))


def normalize(raw: list[float]) -> tuple[list[float], bool]:
    """Divide by the series total.  An all-zero series stays all-zero and
    is flagged (second return value True)."""
    total = float(sum(raw))
    if total == 0.0:
        log.warning("all phase popularities are zero; series left as zeros")
        return [0.0 for _ in raw], True
    return [p / total for p in raw], False


def _assemble(platform: str, resolution: int, span: tuple[int, int],
              raw: list[float], phases: list[EventPhase], method: str) -> Epts:
    points, all_zero = normalize(raw)
    return Epts(
        platform=platform,
        resolution=resolution,
        span=span,
        points=points,
        contributive_sets=[set(p.contributive) for p in phases],
        method=method,
        all_zero=all_zero,
    )


def tfsw_epts(phases: list[EventPhase], weights_per_phase: list[dict[str, float]],
              platform: str, resolution: int, span: tuple[int, int]) -> Epts:
    raw = [phase_popularity(p, w) for p, w in zip(phases, weights_per_phase)]
    return _assemble(platform, resolution, span, raw, phases, "tfsw")


def naive_frequency_epts(phases: list[EventPhase], platform: str,
                         resolution: int, span: tuple[int, int]) -> Epts:
    """Baseline: phase popularity is the plain token total."""
    raw = [float(p.token_total) for p in phases]
    return _assemble(platform, resolution, span, raw, phases, "naive")


def tfidf_epts(phases: list[EventPhase], platform: str,
               resolution: int, span: tuple[int, int]) -> Epts:
    """Baseline: fre(w) * (1 + ln(records in phase / records containing w)),
    with records of the phase as the document collection."""
    raw = []
    for phase in phases:
        n_docs = len(phase.records)
        if n_docs == 0:
            raw.append(0.0)
            continue
        df: dict[str, int] = {}
        for rec in phase.records:
            for w in set(rec):
                df[w] = df.get(w, 0) + 1
        pop = sum(
            f * (1.0 + math.log(n_docs / df[w]))
            for w, f in phase.freq.items()
        )
        raw.append(float(pop))
    return _assemble(platform, resolution, span, raw, phases, "tfidf")


def atomic_write_text(path: str, text: str) -> None:
    """Write-temp-then-rename so partially written files never appear."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def to_json(e: Epts) -> str:
    """Serialize with sorted keys and 1-based phase indices (the report
    convention); deterministic byte-for-byte for identical inputs."""
    doc = {
        "platform": e.platform,
        "method": e.method,
        "resolution_seconds": e.resolution,
        "span": [e.span[0], e.span[1]],
        "all_zero": e.all_zero,
        "points": [{"i": i + 1, "pop": p} for i, p in enumerate(e.points)],
        "contributive": [
            {"i": i + 1, "words": sorted(s)} for i, s in enumerate(e.contributive_sets)
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save(e: Epts, path: str) -> None:
    atomic_write_text(path, to_json(e))


def load(path: str) -> Epts:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    for key in ("platform", "resolution_seconds", "span", "points"):
        if key not in doc:
            raise ValueError(f"{path}: missing required EPTS field {key!r}")
    points_doc = sorted(doc["points"], key=lambda p: p["i"])
    contributive_doc = sorted(doc.get("contributive", []), key=lambda c: c["i"])
    contributive = [set(c["words"]) for c in contributive_doc]
    if contributive and len(contributive) != len(points_doc):
        raise ValueError(f"{path}: contributive/points length mismatch")
    return Epts(
        platform=doc["platform"],
        resolution=int(doc["resolution_seconds"]),
        span=(int(doc["span"][0]), int(doc["span"][1])),
        points=[float(p["pop"]) for p in points_doc],
        contributive_sets=contributive,
        method=doc.get("method", "tfsw"),
        all_zero=bool(doc.get("all_zero", False)),
    )
