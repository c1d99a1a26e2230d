"""Alignment report serialization and plot-data dumps.

The report is self-contained JSON: variant, parameters, 1-based match
list with per-match distance components, total cost, detector output,
metrics, and both series, so metrics can be recomputed from the file
alone.  CSV dumps cover the cumulated-cost heatmap and the lead-lag
stripe data.
"""

from __future__ import annotations

import csv
import json
import io

import numpy as np

from eptalign import dtw as dtw_mod
from eptalign.dtw import Alignment, VariantSpec
from eptalign.epts import Epts, atomic_write_text
from eptalign.metrics import MetricsReport, compute_metrics


def build_report(
    alignment: Alignment,
    epts_a: Epts,
    epts_b: Epts,
    spec: VariantSpec,
    fanout_limit: int = dtw_mod.DEFAULT_FANOUT_LIMIT,
    max_lag: int = 4,
    phase_dist: np.ndarray | None = None,
) -> dict:
    _, components = dtw_mod.cost_matrices(epts_a, epts_b, spec, phase_dist)
    matches = []
    for i, j in alignment.matches:
        entry = {"i": i + 1, "j": j + 1}
        for name, matrix in components.items():
            entry[f"dist_{name}"] = float(matrix[i, j])
        matches.append(entry)
    singular = dtw_mod.detect_singularity(alignment, fanout_limit)
    far = dtw_mod.detect_far_match(alignment, max_lag)
    met = compute_metrics(alignment, epts_a, epts_b)
    return {
        "variant": alignment.variant,
        "params": alignment.params,
        "platform_a": epts_a.platform,
        "platform_b": epts_b.platform,
        "resolution_seconds": epts_a.resolution,
        "series_a": list(epts_a.points),
        "series_b": list(epts_b.points),
        "matches": matches,
        "total_cost": alignment.total_cost,
        "detectors": {
            "fanout_limit": fanout_limit,
            "max_lag": max_lag,
            "singular_points": [{"side": s, "index": i + 1} for s, i in singular],
            "far_matches": [{"i": i + 1, "j": j + 1} for i, j in far],
        },
        "metrics": metrics_dict(met),
    }


def metrics_dict(met: MetricsReport) -> dict:
    return {
        "psi_S": met.psi_S,
        "psi_A": met.psi_A,
        "delta_A": met.delta_A,
        "delta_B": met.delta_B,
        "match_count": met.match_count,
        "resolution_seconds": met.resolution,
    }


def save_report(report: dict, path: str) -> None:
    atomic_write_text(path, json.dumps(report, sort_keys=True, indent=2) + "\n")


def load_report(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def alignment_from_report(report: dict) -> tuple[Alignment, Epts, Epts]:
    """Rebuild the alignment and bare series from a serialized report,
    enough to recompute the metrics bit-identically."""
    matches = [(m["i"] - 1, m["j"] - 1) for m in report["matches"]]
    a = Epts(platform=report["platform_a"], resolution=report["resolution_seconds"],
             span=(0, 0), points=[float(x) for x in report["series_a"]])
    b = Epts(platform=report["platform_b"], resolution=report["resolution_seconds"],
             span=(0, 0), points=[float(x) for x in report["series_b"]])
    alignment = Alignment(
        matches=matches,
        total_cost=float(report["total_cost"]),
        variant=report["variant"],
        params=report.get("params", {}),
        n=len(a.points),
        m=len(b.points),
    )
    return alignment, a, b


def heatmap_csv(epts_a: Epts, epts_b: Epts, spec: VariantSpec,
                phase_dist: np.ndarray | None = None) -> str:
    """Cumulated-cost matrix as CSV (row per phase of A)."""
    G, _ = dtw_mod.cost_matrices(epts_a, epts_b, spec, phase_dist)
    Gs = dtw_mod.cumulate(G, spec.bias if spec.has_bias else None)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["i\\j"] + [str(j + 1) for j in range(Gs.shape[1])])
    for i in range(Gs.shape[0]):
        writer.writerow([str(i + 1)] + [repr(float(v)) for v in Gs[i]])
    return buf.getvalue()


def leadlag_csv(alignment: Alignment, epts_a: Epts, epts_b: Epts) -> str:
    """Per-match stripe data: i, j, normalized popularity on each side."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["i", "j", "pop_a", "pop_b"])
    for i, j in alignment.matches:
        writer.writerow([i + 1, j + 1, repr(epts_a.points[i]), repr(epts_b.points[j])])
    return buf.getvalue()
