"""Contributive-word selection and TextRank importance per event phase.

One undirected graph is built per phase: vertices are the phase's
contributive words, edges carry strictly positive similarity.  TextRank
scores are the damped fixed point

    TR(w_i) = (1 - theta)/N + theta * sum_j sim(i,j)/deg(j) * TR(w_j)

iterated from a uniform start.  Scores sum to 1; a word's weight is its
score compensated by graph size and the phase token total.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from eptalign.ingest import EventPhase

DEFAULT_THETA = 0.85
DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 200


@dataclass
class SimilarityGraph:
    nodes: list[str]                       # sorted word order
    edges: dict[tuple[int, int], float]    # i < j -> positive sim


@dataclass
class TextRankResult:
    scores: dict[str, float]
    iterations: int
    residual: float
    converged: bool


def contributive_words(phase: EventPhase, survivors: set[str], sim_fn) -> set[str]:
    """Words of the phase (restricted to Zipf survivors) that have
    positive similarity to at least one *other* such word.
    """
    candidates = sorted(survivors & phase.freq.keys())
    contributive: set[str] = set()
    for a_idx, a in enumerate(candidates):
        if a in contributive:
            continue
        for b in candidates[a_idx + 1:]:
            if sim_fn(a, b) > 0.0:
                contributive.add(a)
                contributive.add(b)
                break
        else:
            # a may still pair with an earlier word already checked
            for b in candidates[:a_idx]:
                if sim_fn(a, b) > 0.0:
                    contributive.add(a)
                    break
    return contributive


def build_graph(words: set[str], sim_fn) -> SimilarityGraph:
    """Graph over ``words`` keeping only strictly positive similarities."""
    nodes = sorted(words)
    edges: dict[tuple[int, int], float] = {}
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            s = sim_fn(nodes[i], nodes[j])
            if s > 0.0:
                edges[(i, j)] = s
    return SimilarityGraph(nodes=nodes, edges=edges)


def textrank(
    graph: SimilarityGraph,
    theta: float = DEFAULT_THETA,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> TextRankResult:
    """Power iteration for the damped TextRank fixed point.

    Nodes with no positive edge redistribute their score uniformly
    (standard dangling-node handling), which keeps the score sum at 1
    for every graph, including a single isolated vertex.
    """
    if not graph.nodes:
        raise ValueError("textrank needs at least one node")
    if not (0.0 < theta < 1.0):
        raise ValueError(f"theta must be in (0,1), got {theta}")
    n = len(graph.nodes)
    W = np.zeros((n, n), dtype=float)
    for (i, j), s in graph.edges.items():
        W[i, j] = s
        W[j, i] = s
    deg = W.sum(axis=0)
    dangling = deg == 0.0
    M = np.zeros_like(W)
    np.divide(W, np.where(dangling, 1.0, deg), where=~dangling, out=M)
    tr = np.full(n, 1.0 / n)
    residual = np.inf
    iterations = 0
    for iterations in range(1, max_iter + 1):
        spread = M @ tr + np.sum(tr[dangling]) / n
        nxt = (1.0 - theta) / n + theta * spread
        residual = float(np.abs(nxt - tr).sum())
        tr = nxt
        if residual < tol:
            break
    converged = residual < tol
    if not converged:
        import logging
        logging.getLogger(__name__).warning(
            "textrank did not converge in %d iterations (residual %.3g)",
            max_iter, residual,
        )
    scores = {w: float(tr[i]) for i, w in enumerate(graph.nodes)}
    return TextRankResult(scores=scores, iterations=iterations,
                          residual=residual, converged=converged)


def weight(word: str, tr: TextRankResult, token_total: int) -> float:
    """Importance weight of a word in its phase.

    TR score divided by the contributive-word count and scaled by the
    phase token total; identically zero for non-contributive words.
    """
    score = tr.scores.get(word)
    if score is None:
        return 0.0
    return score / len(tr.scores) * token_total
