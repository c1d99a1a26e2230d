import json

import pytest

from eptalign import report as report_mod
from eptalign.dtw import VariantSpec, align
from eptalign.metrics import compute_metrics

from conftest import far_match_pair, make_epts, random_epts_pair


def build(a, b, name="wdtw-cd", **kw):
    spec = VariantSpec(name, exact_phase_dist=True)
    al = align(a, b, spec)
    return report_mod.build_report(al, a, b, spec, **kw), al


def test_report_is_self_contained_and_one_based(rng):
    a, b = random_epts_pair(rng, max_len=6)
    rep, al = build(a, b)
    assert rep["variant"] == "wdtw-cd"
    assert len(rep["matches"]) == len(al.matches)
    first = rep["matches"][0]
    assert first["i"] == 1 and first["j"] == 1  # 1-based in serialized form
    assert rep["series_a"] == a.points
    assert set(rep["detectors"]) >= {"fanout_limit", "max_lag", "singular_points", "far_matches"}
    assert "psi_S" in rep["metrics"]


def test_report_roundtrip_reproduces_metrics_bit_identical(tmp_path, rng):
    a, b = random_epts_pair(rng, max_len=8)
    rep, al = build(a, b, name="dtw")
    p = tmp_path / "rep.json"
    report_mod.save_report(rep, str(p))
    loaded = report_mod.load_report(str(p))
    al2, a2, b2 = report_mod.alignment_from_report(loaded)
    met1 = compute_metrics(al, a, b)
    met2 = compute_metrics(al2, a2, b2)
    assert met1 == met2  # bit-identical recomputation


def test_detectors_recorded_on_pathological_pair():
    a, b = far_match_pair()
    rep, _ = build(a, b, name="ddtw", max_lag=4)
    assert rep["detectors"]["far_matches"]
    rep_w, _ = build(a, b, name="wdtw-cd", max_lag=4)
    assert not rep_w["detectors"]["far_matches"]


def test_save_report_deterministic(tmp_path, rng):
    a, b = random_epts_pair(rng, max_len=6)
    rep, _ = build(a, b)
    p1, p2 = tmp_path / "1.json", tmp_path / "2.json"
    report_mod.save_report(rep, str(p1))
    report_mod.save_report(rep, str(p2))
    assert p1.read_bytes() == p2.read_bytes()


def test_heatmap_and_leadlag_csv(rng):
    a, b = random_epts_pair(rng, max_len=5)
    spec = VariantSpec("dtw")
    hm = report_mod.heatmap_csv(a, b, spec)
    rows = [r for r in hm.strip().splitlines()]
    assert len(rows) == len(a.points) + 1  # header + one row per i
    al = align(a, b, spec)
    ll = report_mod.leadlag_csv(al, a, b)
    assert len(ll.strip().splitlines()) == len(al.matches) + 1
