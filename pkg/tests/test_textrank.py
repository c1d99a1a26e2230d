import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eptalign.ingest import EventPhase
from eptalign.textrank import (
    SimilarityGraph,
    build_graph,
    contributive_words,
    textrank,
    weight,
)


def phase_with(freqs):
    p = EventPhase(index=0, start=0, end=10)
    p.freq = Counter(freqs)
    return p


def pair_table(table):
    def sim_fn(a, b):
        key = (a, b) if a <= b else (b, a)
        return table.get(key, 0.0)
    return sim_fn


def test_contributive_needs_positive_partner():
    phase = phase_with({"a": 3, "b": 2, "c": 1, "x": 5})
    sim_fn = pair_table({("a", "b"): 0.5})
    out = contributive_words(phase, survivors={"a", "b", "c"}, sim_fn=sim_fn)
    assert out == {"a", "b"}  # c has no partner; x did not survive the cutoff


def test_contributive_restricted_to_phase_vocabulary():
    phase = phase_with({"a": 1})
    sim_fn = pair_table({("a", "b"): 0.9})
    assert contributive_words(phase, survivors={"a", "b"}, sim_fn=sim_fn) == set()


def test_build_graph_keeps_positive_edges_only():
    g = build_graph({"a", "b", "c"}, pair_table({("a", "b"): 0.4, ("b", "c"): 0.0}))
    assert g.nodes == ["a", "b", "c"]
    assert g.edges == {(0, 1): 0.4}


def test_textrank_single_isolated_node():
    g = SimilarityGraph(nodes=["a"], edges={})
    res = textrank(g)
    assert res.scores["a"] == pytest.approx(1.0)
    assert res.converged


def test_textrank_symmetric_pair_splits_evenly():
    g = SimilarityGraph(nodes=["a", "b"], edges={(0, 1): 0.7})
    res = textrank(g)
    assert res.scores["a"] == pytest.approx(0.5, abs=1e-8)
    assert res.scores["b"] == pytest.approx(0.5, abs=1e-8)


def test_textrank_uniform_complete_graph_uniform_scores():
    n = 5
    nodes = [f"w{i}" for i in range(n)]
    edges = {(i, j): 0.3 for i in range(n) for j in range(i + 1, n)}
    res = textrank(SimilarityGraph(nodes=nodes, edges=edges))
    for s in res.scores.values():
        assert s == pytest.approx(1.0 / n, abs=1e-8)


def test_textrank_favors_the_hub():
    # star: center attached to 3 leaves
    nodes = ["c", "l1", "l2", "l3"]
    edges = {(0, 1): 1.0, (0, 2): 1.0, (0, 3): 1.0}
    res = textrank(SimilarityGraph(nodes=nodes, edges=edges))
    assert res.scores["c"] > res.scores["l1"]


def test_textrank_scale_invariance():
    nodes = ["a", "b", "c", "d"]
    edges = {(0, 1): 0.2, (1, 2): 0.9, (0, 3): 0.1, (2, 3): 0.4}
    r1 = textrank(SimilarityGraph(nodes=nodes, edges=edges))
    r3 = textrank(SimilarityGraph(nodes=nodes, edges={k: 3 * v for k, v in edges.items()}))
    for w in nodes:
        assert abs(r1.scores[w] - r3.scores[w]) <= 1e-9


def test_textrank_argument_validation():
    with pytest.raises(ValueError):
        textrank(SimilarityGraph(nodes=[], edges={}))
    with pytest.raises(ValueError):
        textrank(SimilarityGraph(nodes=["a"], edges={}), theta=1.0)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=10 ** 6))
def test_textrank_scores_sum_to_one(n, seed):
    rng = np.random.default_rng(seed)
    nodes = [f"w{i}" for i in range(n)]
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                edges[(i, j)] = float(rng.random()) + 1e-6
    res = textrank(SimilarityGraph(nodes=nodes, edges=edges))
    assert math.isclose(sum(res.scores.values()), 1.0, abs_tol=1e-6)
    assert all(s > 0 for s in res.scores.values())


def test_weight_scales_by_token_total():
    g = SimilarityGraph(nodes=["a", "b"], edges={(0, 1): 1.0})
    res = textrank(g)
    # weight = TR/|C| * token_total
    assert weight("a", res, token_total=10) == pytest.approx(res.scores["a"] / 2 * 10)
    assert weight("zzz", res, token_total=10) == 0.0
