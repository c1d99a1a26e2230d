"""End-to-end TF-SW assembly: ingest output -> noise cutoff ->
contributive words -> TextRank weights -> normalized popularity series."""

from __future__ import annotations

from dataclasses import dataclass, field

import eptalign.epts as epts_mod
import eptalign.textrank as tr_mod
import eptalign.zipf as zipf_mod
from eptalign.ingest import EventPhase, pooled_frequencies
from eptalign.similarity import SimilarityParams, WordSimilarity


@dataclass
class TfswResult:
    epts: epts_mod.Epts
    fit: zipf_mod.PowerLawFit
    survivors: set[str]
    textrank_per_phase: list[tr_mod.TextRankResult | None] = field(default_factory=list)
    weights_per_phase: list[dict[str, float]] = field(default_factory=list)


def build_tfsw(
    phases: list[EventPhase],
    platform: str,
    resolution: int,
    span: tuple[int, int],
    sim_params: SimilarityParams,
    emb_event=None,
    emb_general=None,
    theta: float = tr_mod.DEFAULT_THETA,
) -> TfswResult:
    """Run TF-SW over bucketed phases.

    Phase popularity sums fre(w) * weight(w) over contributive words; the
    weight compensation uses the phase's post-cutoff (survivor) token
    total, so records removed by the noise filter do not inflate the
    popularity of the words that survive it.
    """
    pooled = pooled_frequencies(phases)
    fit = zipf_mod.fit_power_law(zipf_mod.rank_frequency(pooled))
    survivors = zipf_mod.filter_vocabulary(pooled, fit.th)
    sim_fn = WordSimilarity(sim_params, emb_event, emb_general)

    raw: list[float] = []
    tr_per_phase: list[tr_mod.TextRankResult | None] = []
    weights_per_phase: list[dict[str, float]] = []
    for phase in phases:
        contrib = tr_mod.contributive_words(phase, survivors, sim_fn)
        phase.contributive = contrib
        if not contrib:
            # quiet interval: no contributive words, zero popularity
            raw.append(0.0)
            tr_per_phase.append(None)
            weights_per_phase.append({})
            continue
        graph = tr_mod.build_graph(contrib, sim_fn)
        tr = tr_mod.textrank(graph, theta=theta)
        survivor_total = sum(f for w, f in phase.freq.items() if w in survivors)
        weights = {w: tr_mod.weight(w, tr, survivor_total) for w in contrib}
        raw.append(epts_mod.phase_popularity(phase, weights))
        tr_per_phase.append(tr)
        weights_per_phase.append(weights)

    points, all_zero = epts_mod.normalize(raw)
    series = epts_mod.Epts(
        platform=platform,
        resolution=resolution,
        span=span,
        points=points,
        contributive_sets=[set(p.contributive) for p in phases],
        method="tfsw",
        all_zero=all_zero,
    )
    return TfswResult(
        epts=series,
        fit=fit,
        survivors=survivors,
        textrank_per_phase=tr_per_phase,
        weights_per_phase=weights_per_phase,
    )
