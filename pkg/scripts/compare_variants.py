#!/usr/bin/env python3
"""Run every alignment variant on the built-in pathology fixtures (or two
EPTS files) and print the ranked table with detector flags.

Usage:
    python3 scripts/compare_variants.py                      # built-in fixtures
    python3 scripts/compare_variants.py a.json b.json        # your own series
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

import numpy as np

from eptalign import dtw as dtw_mod
from eptalign import epts as epts_mod
from eptalign import report as report_mod
from eptalign.cli import rank_reports


def run_pair(name, a, b, exact=True):
    reports = []
    for variant in sorted(dtw_mod.VARIANTS):
        spec = dtw_mod.VariantSpec(variant, exact_phase_dist=exact)
        alignment = dtw_mod.align(a, b, spec)
        reports.append(report_mod.build_report(alignment, a, b, spec))
    print(f"\n=== {name} ===")
    print(f"{'rank':<5} {'variant':<12} {'cost':>12} {'psi_S':>8} {'psi_A':>8} pathologies")
    for row in rank_reports(reports):
        flags = ",".join(row["pathologies"]) or "-"
        print(f"{row['rank']:<5} {row['variant']:<12} {row['total_cost']:>12.6f} "
              f"{row['metrics']['psi_S']:>8.4f} {row['metrics']['psi_A']:>8.4f} {flags}")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("epts", nargs="*", help="two EPTS JSON files (default: fixtures)")
    args = ap.parse_args()

    if args.epts:
        if len(args.epts) != 2:
            ap.error("pass exactly two EPTS files, or none for the fixtures")
        a = epts_mod.load(args.epts[0])
        b = epts_mod.load(args.epts[1])
        run_pair(f"{args.epts[0]} vs {args.epts[1]}", a, b)
        return 0

    from conftest import far_match_pair, singularity_pair
    run_pair("plateau vs spike (singularity exhibit)", *singularity_pair())
    run_pair("shifted peak, true lag 2 (far-match exhibit)", *far_match_pair())
    return 0


if __name__ == "__main__":
    sys.exit(main())
