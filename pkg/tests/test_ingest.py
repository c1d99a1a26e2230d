import json

import pytest

from eptalign.ingest import (
    IngestError,
    Record,
    bucket,
    load_records,
    load_stopwords,
    pooled_frequencies,
    preprocess,
)


def test_preprocess_strips_urls_punct_and_stopwords():
    text = "Check https://example.com/x?y=1 out, BIG News!!! the end."
    toks = preprocess(text, stopwords={"the"})
    assert toks == ["check", "out", "big", "news", "end"]


def test_preprocess_drops_symbol_only_tokens():
    assert preprocess("!!! ??? ---") == []
    assert preprocess("a1 _ :-)") == ["a1"]


def test_preprocess_lowercases_and_splits():
    assert preprocess("Foo\tBar\nBaz") == ["foo", "bar", "baz"]


def test_load_stopwords(tmp_path):
    p = tmp_path / "stop.txt"
    p.write_text("# comment\nthe\n\na\n")
    assert load_stopwords(str(p)) == {"the", "a"}


def _write_jsonl(path, lines):
    path.write_text("\n".join(lines) + "\n")


def test_load_records_text_and_tokens(tmp_path):
    p = tmp_path / "r.jsonl"
    _write_jsonl(p, [
        json.dumps({"ts": 10, "text": "Hello World"}),
        json.dumps({"ts": 20, "tokens": ["x", "y"]}),
    ])
    recs = list(load_records(str(p), "t"))
    assert recs[0] == Record(timestamp=10, tokens=("hello", "world"), platform="t")
    assert recs[1].tokens == ("x", "y")


def test_load_records_counts_malformed_and_empty(tmp_path):
    p = tmp_path / "r.jsonl"
    _write_jsonl(p, [
        "not json",
        json.dumps({"ts": 1, "text": "ok line"}),
        json.dumps({"ts": "bad"}),
        json.dumps({"ts": 2, "text": "..."}),   # empties after cleaning
        json.dumps({"ts": 3, "tokens": ["fine"]}),
    ])
    counts: dict[str, int] = {}
    recs = list(load_records(str(p), "t", counts=counts))
    assert len(recs) == 2
    assert counts["loaded"] == 2
    assert counts["skipped_malformed"] == 2
    assert counts["skipped_empty"] == 1


def test_load_records_mostly_malformed_is_fatal(tmp_path):
    p = tmp_path / "r.jsonl"
    _write_jsonl(p, ["oops", "{bad", json.dumps({"ts": 1, "text": "ok"})])
    with pytest.raises(IngestError, match="malformed"):
        list(load_records(str(p), "t"))


def test_load_records_missing_file():
    with pytest.raises(IngestError, match="cannot read"):
        list(load_records("/nonexistent/file.jsonl", "t"))


def _rec(ts, toks=("w",)):
    return Record(timestamp=ts, tokens=tuple(toks), platform="t")


def test_bucket_half_open_intervals():
    phases = bucket([_rec(0), _rec(9), _rec(10)], span=(0, 20), resolution=10)
    assert len(phases) == 2
    assert phases[0].freq["w"] == 2
    assert phases[1].freq["w"] == 1
    assert (phases[0].start, phases[0].end) == (0, 10)


def test_bucket_ceil_partial_last_phase():
    phases = bucket([_rec(0), _rec(24)], span=(0, 25), resolution=10)
    assert len(phases) == 3
    assert (phases[2].start, phases[2].end) == (20, 25)


def test_bucket_out_of_span_counted():
    counts: dict[str, int] = {}
    bucket([_rec(-1), _rec(5), _rec(20)], span=(0, 20), resolution=10, counts=counts)
    assert counts["out_of_span"] == 2
    assert counts["bucketed"] == 1


def test_bucket_nothing_in_span_is_fatal():
    with pytest.raises(IngestError, match="no records"):
        bucket([_rec(100)], span=(0, 20), resolution=10)


def test_bucket_bad_span_and_resolution():
    with pytest.raises(ValueError):
        bucket([_rec(0)], span=(0, 10), resolution=0)
    with pytest.raises(ValueError):
        bucket([_rec(0)], span=(10, 10), resolution=5)


def test_pooled_frequencies_and_token_total():
    phases = bucket([_rec(0, ("a", "b")), _rec(11, ("a",))], span=(0, 20), resolution=10)
    pooled = pooled_frequencies(phases)
    assert pooled == {"a": 2, "b": 1}
    assert phases[0].token_total == 2
    assert phases[1].token_total == 1
