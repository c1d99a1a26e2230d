"""Command-line pipeline: EPTS generation, alignment, metrics, variant
comparison, the noise benchmark, and the Zipf report.

Every numeric parameter has a package default, may be set in a config
file (INI sections, flat keys), and is overridable by the CLI flag of
the same name; precedence is flag > config > default.  All reports are
JSON (plus CSV matrix dumps) written atomically; commands exit nonzero
with a stage-labeled diagnostic on failure.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys

from eptalign import dtw as dtw_mod
from eptalign import epts as epts_mod
from eptalign import report as report_mod
from eptalign import synth, zipf
from eptalign.epts import atomic_write_text
from eptalign.ingest import IngestError, bucket, load_records, load_stopwords, pooled_frequencies
from eptalign.pipeline import build_tfsw
from eptalign.similarity import HashEmbeddings, SimilarityParams, load_embeddings

DEFAULTS = {
    "beta": 0.7,
    "gamma": 0.02,
    "theta": 0.85,
    "eta": 10.0,
    "tau": 2.0,
    "s": 128,
    "seed": 0,
    "fanout_limit": 4,
    "max_lag": 4,
    "resolution": 86400,
}

_CASTS = {
    "beta": float, "gamma": float, "theta": float, "eta": float, "tau": float,
    "s": int, "seed": int, "fanout_limit": int, "max_lag": int, "resolution": int,
}


class StageError(Exception):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    parser = configparser.ConfigParser()
    if not parser.read(path, encoding="utf-8"):
        raise StageError("config", f"cannot read config file {path!r}")
    merged: dict[str, str] = {}
    for section in parser.sections():
        merged.update(parser.items(section))
    merged.update(parser.defaults())
    return merged


def _param(args: argparse.Namespace, config: dict, key: str):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return _CASTS.get(key, str)(config[key])
    return DEFAULTS[key]


def _add_param_flags(p: argparse.ArgumentParser, keys: list[str]) -> None:
    for key in keys:
        p.add_argument(f"--{key.replace('_', '-')}", dest=key,
                       type=_CASTS.get(key, str), default=None)


def _write_json(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if path:
        atomic_write_text(path, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- epts

def _build_phases(args, config):
    stopwords = load_stopwords(args.stopwords) if args.stopwords else set()
    resolution = _param(args, config, "resolution")
    span = (args.span[0], args.span[1])
    counts: dict[str, int] = {}
    try:
        records = load_records(args.records, args.platform, stopwords, counts)
        phases = bucket(records, span, resolution, counts)
    except IngestError as exc:
        raise StageError("ingest", str(exc)) from exc
    return phases, span, resolution, counts


def _embeddings(args, config):
    if getattr(args, "str_only", False):
        return None, None, 0.0
    gamma = _param(args, config, "gamma")
    if getattr(args, "hash_embeddings", False):
        seed = _param(args, config, "seed")
        return HashEmbeddings(seed=seed, label="event"), HashEmbeddings(seed=seed + 1, label="general"), gamma
    emb_event = emb_general = None
    if args.emb_event:
        emb_event = load_embeddings(args.emb_event, "event")
    if args.emb_general:
        emb_general = load_embeddings(args.emb_general, "general")
    if emb_event is None and emb_general is None:
        raise StageError(
            "similarity",
            "no embeddings given; pass --emb-event/--emb-general, or "
            "--hash-embeddings for a deterministic stand-in, or --str-only "
            "to use lexical similarity alone",
        )
    return emb_event, emb_general, gamma


def cmd_epts(args, config) -> int:
    phases, span, resolution, counts = _build_phases(args, config)
    emb_event, emb_general, gamma = _embeddings(args, config)
    params = SimilarityParams(beta=_param(args, config, "beta"), gamma=gamma)
    result = build_tfsw(phases, args.platform, resolution, span, params,
                        emb_event, emb_general, theta=_param(args, config, "theta"))
    epts_mod.save(result.epts, args.out)
    written = [args.out]
    if args.baselines:
        stem = args.out[:-5] if args.out.endswith(".json") else args.out
        naive = epts_mod.naive_frequency_epts(phases, args.platform, resolution, span)
        tfidf = epts_mod.tfidf_epts(phases, args.platform, resolution, span)
        epts_mod.save(naive, f"{stem}.naive.json")
        epts_mod.save(tfidf, f"{stem}.tfidf.json")
        written += [f"{stem}.naive.json", f"{stem}.tfidf.json"]
    if args.zipf_report:
        _write_json(_zipf_doc(result.fit, len(result.survivors)), args.zipf_report)
    if args.dump_textrank:
        _write_json(_textrank_dump(phases, result), args.dump_textrank)
    print(f"wrote {', '.join(written)} "
          f"({counts['loaded']} records, {counts['skipped_malformed']} malformed skipped)")
    return 0


def _textrank_dump(phases, result) -> dict:
    out = []
    for phase, tr, weights in zip(phases, result.textrank_per_phase, result.weights_per_phase):
        rows = []
        if tr is not None:
            for word in sorted(tr.scores):
                rows.append({
                    "word": word,
                    "tr": tr.scores[word],
                    "weight": weights[word],
                    "fre": phase.freq[word],
                })
        out.append({"i": phase.index + 1, "words": rows})
    return {"phases": out}


def _zipf_doc(fit, survivor_count: int) -> dict:
    return {
        "H": fit.H,
        "alpha": fit.alpha,
        "r_half": fit.r_half,
        "th": fit.th,
        "degenerate": fit.degenerate,
        "vocab_size": fit.vocab_size,
        "survivor_count": survivor_count,
    }


def cmd_zipf_report(args, config) -> int:
    phases, _, _, _ = _build_phases(args, config)
    pooled = pooled_frequencies(phases)
    try:
        fit = zipf.fit_power_law(zipf.rank_frequency(pooled))
        survivors = zipf.filter_vocabulary(pooled, fit.th)
    except zipf.ZipfError as exc:
        raise StageError("zipf", str(exc)) from exc
    _write_json(_zipf_doc(fit, len(survivors)), args.out)
    return 0


# ---------------------------------------------------------------- align

def _variant_spec(name: str, args, config) -> dtw_mod.VariantSpec:
    bias = DEFAULTS_BIAS
    if args.bias:
        parts = [float(x) for x in args.bias.split(",")]
        if len(parts) != 3:
            raise StageError("align", "--bias needs three comma-separated values")
        bias = tuple(parts)
    return dtw_mod.VariantSpec(
        name=name,
        bias=bias,
        eta=_param(args, config, "eta"),
        tau=_param(args, config, "tau"),
        signature_length=_param(args, config, "s"),
        seed=_param(args, config, "seed"),
        exact_phase_dist=getattr(args, "exact_phase_dist", False),
    )


DEFAULTS_BIAS = dtw_mod.DEFAULT_BIAS


def _run_variants(args, config) -> tuple[list[dict], epts_mod.Epts, epts_mod.Epts]:
    try:
        a = epts_mod.load(args.epts_a)
        b = epts_mod.load(args.epts_b)
    except (OSError, ValueError, KeyError) as exc:
        raise StageError("align", f"cannot load EPTS file: {exc}") from exc
    names = sorted(dtw_mod.VARIANTS) if args.variant == "all" else [args.variant]
    fanout_limit = _param(args, config, "fanout_limit")
    max_lag = _param(args, config, "max_lag")
    reports = []
    for name in names:
        spec = _variant_spec(name, args, config)
        try:
            alignment = dtw_mod.align(a, b, spec)
        except dtw_mod.AlignError as exc:
            raise StageError("align", f"{name}: {exc}") from exc
        reports.append(report_mod.build_report(alignment, a, b, spec,
                                               fanout_limit=fanout_limit, max_lag=max_lag))
    return reports, a, b


def cmd_align(args, config) -> int:
    if args.variant != "all" and args.variant not in dtw_mod.VARIANTS:
        raise StageError("align", f"unknown variant {args.variant!r}; "
                                  f"choose from {sorted(dtw_mod.VARIANTS)} or 'all'")
    reports, a, b = _run_variants(args, config)
    doc = reports[0] if len(reports) == 1 else {"reports": reports}
    _write_json(doc, args.out)
    if args.heatmap:
        spec = _variant_spec(reports[0]["variant"], args, config)
        atomic_write_text(args.heatmap, report_mod.heatmap_csv(a, b, spec))
    if args.leadlag:
        alignment, ra, rb = report_mod.alignment_from_report(reports[0])
        atomic_write_text(args.leadlag, report_mod.leadlag_csv(alignment, ra, rb))
    return 0


def cmd_metrics(args, config) -> int:
    from eptalign.metrics import compute_metrics
    rows = []
    for path in args.reports:
        doc = report_mod.load_report(path)
        for rep in doc.get("reports", [doc]):
            alignment, a, b = report_mod.alignment_from_report(rep)
            met = compute_metrics(alignment, a, b)
            rows.append((rep["variant"], met))
    print(f"{'variant':<12} {'psi_S':>10} {'psi_A':>10} {'delta_A':>10} {'delta_B':>10} {'|M|':>6}")
    for name, met in rows:
        print(f"{name:<12} {met.psi_S:>10.4f} {met.psi_A:>10.4f} "
              f"{met.delta_A:>10.4f} {met.delta_B:>10.4f} {met.match_count:>6}")
    return 0


def cmd_compare(args, config) -> int:
    args.variant = "all"
    reports, _, _ = _run_variants(args, config)
    ranked = rank_reports(reports)
    doc = {"ranking": ranked}
    _write_json(doc, args.out)
    print(f"{'rank':<5} {'variant':<12} {'cost':>12} {'components':>11} pathologies")
    for row in ranked:
        flags = ",".join(row["pathologies"]) or "-"
        print(f"{row['rank']:<5} {row['variant']:<12} {row['total_cost']:>12.6f} "
              f"{row['components']:>11} {flags}")
    return 0


def rank_reports(reports: list[dict]) -> list[dict]:
    """Rank variant reports: pathology-free first, then lower total cost,
    then fewer distance components."""
    rows = []
    for rep in reports:
        pathologies = []
        if rep["detectors"]["singular_points"]:
            pathologies.append("singularity")
        if rep["detectors"]["far_matches"]:
            pathologies.append("far-match")
        rows.append({
            "variant": rep["variant"],
            "total_cost": rep["total_cost"],
            "components": dtw_mod.COMPONENT_COUNT[rep["variant"]],
            "pathologies": pathologies,
            "metrics": rep["metrics"],
        })
    rows.sort(key=lambda r: (len(r["pathologies"]), r["total_cost"], r["components"], r["variant"]))
    for rank, row in enumerate(rows, start=1):
        row["rank"] = rank
    return rows


# ---------------------------------------------------------------- noise bench

def cmd_noise_bench(args, config) -> int:
    seed = _param(args, config, "seed")
    records, span, resolution = synth.make_noise_corpus(scale=args.scale, seed=seed)
    phases = bucket(records, span, resolution)
    params = SimilarityParams(beta=_param(args, config, "beta"),
                              gamma=_param(args, config, "gamma"))
    emb_event = HashEmbeddings(seed=seed, label="event")
    emb_general = HashEmbeddings(seed=seed + 1, label="general")
    result = build_tfsw(phases, "sim", resolution, span, params, emb_event, emb_general,
                        theta=_param(args, config, "theta"))
    naive = epts_mod.naive_frequency_epts(phases, "sim", resolution, span)
    tfidf = epts_mod.tfidf_epts(phases, "sim", resolution, span)
    doc = {
        "scale": args.scale,
        "seed": seed,
        "noise_counts_per_50k": list(synth.NOISE_COUNTS_PER_50K),
        "series": {
            "tfsw": result.epts.points,
            "naive": naive.points,
            "tfidf": tfidf.points,
        },
        "cov": {
            "tfsw": synth.coefficient_of_variation(result.epts.points),
            "naive": synth.coefficient_of_variation(naive.points),
            "tfidf": synth.coefficient_of_variation(tfidf.points),
        },
    }
    _write_json(doc, args.out)
    print(f"CoV tfsw={doc['cov']['tfsw']:.5f} naive={doc['cov']['naive']:.5f} "
          f"tfidf={doc['cov']['tfidf']:.5f}")
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eptalign", description=__doc__)
    parser.add_argument("--config", default=None, help="INI config file; flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("epts", help="build the TF-SW popularity series from raw records")
    p.add_argument("--records", required=True)
    p.add_argument("--platform", required=True)
    p.add_argument("--span", nargs=2, type=int, required=True, metavar=("START", "END"))
    p.add_argument("--stopwords", default=None)
    p.add_argument("--emb-event", default=None)
    p.add_argument("--emb-general", default=None)
    p.add_argument("--hash-embeddings", action="store_true",
                   help="use the deterministic hash embedding stand-in")
    p.add_argument("--str-only", action="store_true",
                   help="lexical similarity only (gamma = 0, no embeddings needed)")
    p.add_argument("--out", required=True)
    p.add_argument("--baselines", action="store_true",
                   help="also write naive-frequency and TF-IDF series")
    p.add_argument("--zipf-report", default=None)
    p.add_argument("--dump-textrank", default=None)
    _add_param_flags(p, ["resolution", "beta", "gamma", "theta", "seed"])
    p.set_defaults(func=cmd_epts)

    p = sub.add_parser("zipf-report", help="rank-frequency fit and cutoff report")
    p.add_argument("--records", required=True)
    p.add_argument("--platform", default="unknown")
    p.add_argument("--span", nargs=2, type=int, required=True, metavar=("START", "END"))
    p.add_argument("--stopwords", default=None)
    p.add_argument("--out", default=None)
    _add_param_flags(p, ["resolution"])
    p.set_defaults(func=cmd_zipf_report)

    p = sub.add_parser("align", help="align two EPTS files with one or all variants")
    p.add_argument("epts_a")
    p.add_argument("epts_b")
    p.add_argument("--variant", default="wdtw-cd")
    p.add_argument("--bias", default=None, help="b1,b2,b3 for the bias variants")
    p.add_argument("--exact-phase-dist", action="store_true")
    p.add_argument("--out", default=None)
    p.add_argument("--heatmap", default=None, help="CSV dump of the cumulated cost matrix")
    p.add_argument("--leadlag", default=None, help="CSV dump of per-match stripe data")
    _add_param_flags(p, ["eta", "tau", "s", "seed", "fanout_limit", "max_lag"])
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("metrics", help="print the metric table for saved reports")
    p.add_argument("reports", nargs="+")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("compare", help="run all variants and rank them")
    p.add_argument("epts_a")
    p.add_argument("epts_b")
    p.add_argument("--bias", default=None)
    p.add_argument("--exact-phase-dist", action="store_true")
    p.add_argument("--out", default=None)
    _add_param_flags(p, ["eta", "tau", "s", "seed", "fanout_limit", "max_lag"])
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("noise-bench", help="noise-robustness benchmark on a synthetic corpus")
    p.add_argument("--scale", type=float, default=0.01,
                   help="fraction of the full-size benchmark corpus (default 0.01)")
    p.add_argument("--out", default=None)
    _add_param_flags(p, ["beta", "gamma", "theta", "seed"])
    p.set_defaults(func=cmd_noise_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except StageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (zipf.ZipfError,) as exc:
        print(f"zipf: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
