#!/usr/bin/env python3
"""Run the full evaluation protocol over a set of RR dataset directories.

For every dataset: per-indicator mean/std and five-number summaries
(boxplot data). For every dataset pair and indicator: deterministic
k-means + RI. Outputs land in --out as CSV and JSON.

Intended for user-downloaded PhysioNet RR exports (one directory per
database, plain-text RR files). Results are sensitive to the units the
RR values are expressed in and to the subspace divisions; sweep those
knobs if group means do not land where expected.

Usage:
    python scripts/reproduce_tables.py nsr2db/ cudb/ --out out/tables \
        --r-ctm 3 --r-d 6 --divisions 10,10,10 --segment-len 1000
"""

from __future__ import annotations

import argparse
import csv
import itertools
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from tvmhrv import (
    ALL_INDICATORS,
    DatasetGroup,
    IndicatorParams,
    Unit,
    aggregate,
    indicator_value,
    load_dataset_group,
    pairwise_classify,
    report,
    split_segments,
)
from tvmhrv.analysis import format_value, summary_csv_text, summary_json_text
from tvmhrv.cli import parse_divisions


def load(path: Path, unit: Unit, segment_len) -> DatasetGroup:
    group = load_dataset_group(path, unit=unit)
    if segment_len is None:
        return group
    recordings = []
    for rec in group.recordings:
        recordings.extend(split_segments(rec, segment_len))
    return DatasetGroup(name=group.name, recordings=tuple(recordings))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("datasets", nargs="+", type=Path, help="dataset directories")
    parser.add_argument("--out", type=Path, default=Path("out/tables"))
    parser.add_argument("--unit", choices=[u.value for u in Unit], default="ms")
    parser.add_argument("--r-ctm", type=float, default=3.0)
    parser.add_argument("--r-d", type=float, default=6.0)
    parser.add_argument("--divisions", type=parse_divisions, default=(10, 10, 10))
    parser.add_argument("--segment-len", type=int, default=None)
    parser.add_argument(
        "--indicators",
        nargs="+",
        default=list(ALL_INDICATORS),
        choices=ALL_INDICATORS,
        help="indicators to cluster on (default: all)",
    )
    args = parser.parse_args()

    params = IndicatorParams(r_ctm=args.r_ctm, r_d=args.r_d, divisions=args.divisions)
    unit = Unit(args.unit)
    groups = [load(path, unit, args.segment_len) for path in args.datasets]
    args.out.mkdir(parents=True, exist_ok=True)

    summaries = [aggregate(group, params) for group in groups]
    (args.out / "summary.csv").write_text(summary_csv_text(summaries))
    (args.out / "summary.json").write_text(summary_json_text(summaries))
    for summary in summaries:
        line = ", ".join(
            f"{ind}={summary.stats[ind].mean:.4g}±{summary.stats[ind].std:.4g}"
            for ind in ("ctm", "d", "etv1")
            if ind in summary.stats
        )
        print(f"{summary.name}: {line}")

    feature_cache = {}
    for group in groups:
        reports = [report(rec, params) for rec in group.recordings]
        feature_cache[group.name] = reports

    with (args.out / "ri_matrix.csv").open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["pair", "indicator", "ri"])
        for ga, gb in itertools.combinations(groups, 2):
            for indicator in args.indicators:
                fa = [indicator_value(r, indicator) for r in feature_cache[ga.name]]
                fb = [indicator_value(r, indicator) for r in feature_cache[gb.name]]
                if any(v is None for v in fa + fb):
                    writer.writerow([f"{ga.name}|{gb.name}", indicator, ""])
                    continue
                outcome = pairwise_classify(fa, fb, label_a=ga.name, label_b=gb.name)
                writer.writerow([f"{ga.name}|{gb.name}", indicator, format_value(outcome.ri)])
                if indicator in ("ctm", "etv1"):
                    print(f"RI[{ga.name} vs {gb.name}, {indicator}] = {outcome.ri:.3f}")

    print(f"outputs in {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
