"""Command-line interface.

Subcommands: `indicators`, `points`, `sweep`, `classify`. Data goes to the
requested output files (or stdout), diagnostics to stderr; runs are fully
deterministic and numeric output is fixed at 9 significant digits. Exit code
is 0 iff every requested output was written.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .analysis import (
    ALL_INDICATORS,
    RADIUS_INDICATORS,
    IndicatorParams,
    format_value,
    indicator_value,
    report,
    round_sig,
    sweep_csv_text,
    sweep_json_text,
    sweep_r,
)
from .cluster import pairwise_classify
from .errors import TvmhrvError
from .series import DatasetGroup, RRSeries, Unit, load_dataset_group, load_rr_series, split_segments
from .sodp import second_order_diff
from .tvm import build_tvm_points

DEFAULT_R_GRID = "0.5:10:0.5"


def parse_divisions(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected NX,NY,NZ, got {text!r}")
    try:
        nx, ny, nz = (int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"divisions must be integers: {text!r}") from None
    if min(nx, ny, nz) < 1:
        raise argparse.ArgumentTypeError("divisions must be >= 1")
    return (nx, ny, nz)


def parse_r_grid(text: str) -> tuple[float, ...]:
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}") from None
    if start <= 0 or step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"need 0 < start <= stop and step > 0: {text!r}")
    # Count bins up front so accumulated float error cannot drop the endpoint.
    count = int((stop - start) / step + 1e-9) + 1
    return tuple(start + i * step for i in range(count))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--unit",
        choices=[u.value for u in Unit],
        default=Unit.MILLISECONDS.value,
        help="unit tag for the input intervals (metadata only; default: ms)",
    )
    parser.add_argument("--r-ctm", type=float, default=3.0, help="radius for CTM/CCTM (default: 3)")
    parser.add_argument("--r-d", type=float, default=6.0, help="radius for D (default: 6)")
    parser.add_argument(
        "--divisions",
        type=parse_divisions,
        default=(10, 10, 10),
        metavar="NX,NY,NZ",
        help="subspace divisions per axis (default: 10,10,10)",
    )
    parser.add_argument(
        "--segment-len",
        type=int,
        default=None,
        metavar="N",
        help="split each recording into consecutive N-interval segments "
        "(trailing partial segment dropped)",
    )
    parser.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tvmhrv",
        description="Second-order difference plot indicators (CTM, CCTM, D) and "
        "the 3-D temporal variation entropy for RR-interval recordings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ind = sub.add_parser("indicators", help="one indicator row per recording")
    p_ind.add_argument("inputs", nargs="+", type=Path, help="RR text files and/or directories")
    _add_common(p_ind)

    p_pts = sub.add_parser("points", help="export 2-D and 3-D scatter points")
    p_pts.add_argument("inputs", nargs="+", type=Path, help="RR text files and/or directories")
    _add_common(p_pts)

    p_swp = sub.add_parser("sweep", help="group-mean indicator over a radius grid")
    p_swp.add_argument("inputs", nargs="+", type=Path, help="dataset directories")
    p_swp.add_argument("--indicator", choices=RADIUS_INDICATORS, default="ctm")
    p_swp.add_argument(
        "--r-grid",
        type=parse_r_grid,
        default=parse_r_grid(DEFAULT_R_GRID),
        metavar="START:STOP:STEP",
        help=f"radius grid (default: {DEFAULT_R_GRID})",
    )
    _add_common(p_swp)

    p_cls = sub.add_parser("classify", help="k-means + RI for a dataset pair")
    p_cls.add_argument("group_a", type=Path, help="first dataset directory")
    p_cls.add_argument("group_b", type=Path, help="second dataset directory")
    p_cls.add_argument("--indicator", choices=ALL_INDICATORS, default="ctm")
    _add_common(p_cls)

    return parser


def _params(args) -> IndicatorParams:
    return IndicatorParams(r_ctm=args.r_ctm, r_d=args.r_d, divisions=args.divisions)


def _segmented(recordings, segment_len):
    if segment_len is None:
        return list(recordings)
    out = []
    for rec in recordings:
        out.extend(split_segments(rec, segment_len))
    return out


def _load_recordings(inputs, unit: Unit, segment_len) -> list[RRSeries]:
    """Flatten files and directories into recordings, sorted by source_id."""
    recordings = []
    for path in inputs:
        if path.is_dir():
            recordings.extend(load_dataset_group(path, unit=unit).recordings)
        else:
            recordings.append(load_rr_series(path, unit=unit))
    recordings = _segmented(recordings, segment_len)
    return sorted(recordings, key=lambda s: s.source_id)


def _load_group_features(directory, unit, params, indicator, segment_len):
    group = load_dataset_group(directory, unit=unit)
    recordings = _segmented(group.recordings, segment_len)
    recordings.sort(key=lambda s: s.source_id)
    features = []
    for rec in recordings:
        value = indicator_value(report(rec, params), indicator)
        if value is None:
            raise TvmhrvError(
                f"{group.name}/{rec.source_id}: indicator {indicator!r} is undefined "
                f"(no point inside r_d={params.r_d}); cannot classify"
            )
        features.append(value)
    return group.name, features


def _open_out(path):
    if path is None:
        return sys.stdout
    return Path(path).open("w", newline="")


def cmd_indicators(args) -> int:
    params = _params(args)
    recordings = _load_recordings(args.inputs, Unit(args.unit), args.segment_len)
    reports = [report(rec, params) for rec in recordings]

    fh = _open_out(args.out)
    try:
        if args.format == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(
                ["source_id", "ctm", "cctm1", "cctm2", "cctm3", "cctm4", "d",
                 "etv_global", "etv1", "etv2", "etv3", "etv4"]
            )
            for rep in reports:
                writer.writerow(
                    [rep.source_id, format_value(rep.ctm)]
                    + [format_value(v) for v in rep.cctm]
                    + ["" if rep.d is None else format_value(rep.d)]
                    + [format_value(rep.etv_global)]
                    + [format_value(v) for v in rep.etv_quadrant]
                )
        else:
            payload = {
                "params": {
                    "r_ctm": round_sig(params.r_ctm),
                    "r_d": round_sig(params.r_d),
                    "divisions": list(params.divisions),
                },
                "reports": [
                    {
                        "source_id": rep.source_id,
                        "ctm": round_sig(rep.ctm),
                        "cctm": [round_sig(v) for v in rep.cctm],
                        "d": None if rep.d is None else round_sig(rep.d),
                        "etv_global": round_sig(rep.etv_global),
                        "etv_quadrant": [round_sig(v) for v in rep.etv_quadrant],
                    }
                    for rep in reports
                ],
            }
            fh.write(json.dumps(payload, indent=2) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _write_point_rows(fh, fmt, source_id, header, rows):
    if fmt == "csv":
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    else:
        keys = header
        payload = {
            "source_id": source_id,
            "points": [
                {k: (v if isinstance(v, (str, int)) else round_sig(v)) for k, v in zip(keys, row)}
                for row in rows
            ],
        }
        fh.write(json.dumps(payload, indent=2) + "\n")


def cmd_points(args) -> int:
    recordings = _load_recordings(args.inputs, Unit(args.unit), args.segment_len)
    seen = set()
    for rec in recordings:
        if rec.source_id in seen:
            raise TvmhrvError(
                f"two inputs share the source id {rec.source_id!r}; "
                "their point files would overwrite each other"
            )
        seen.add(rec.source_id)
    out_dir = args.out if args.out is not None else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    ext = args.format

    for rec in recordings:
        points = second_order_diff(rec)
        tvm_points = build_tvm_points(points)

        sodp_path = out_dir / f"{rec.source_id}_sodp.{ext}"
        with sodp_path.open("w", newline="") as fh:
            if args.format == "csv":
                rows = [
                    (p.index, format_value(p.x), format_value(p.y), p.quadrant.value)
                    for p in points
                ]
            else:
                rows = [(p.index, p.x, p.y, p.quadrant.value) for p in points]
            _write_point_rows(fh, args.format, rec.source_id, ["index", "x", "y", "quadrant"], rows)

        tvm_path = out_dir / f"{rec.source_id}_tvm.{ext}"
        with tvm_path.open("w", newline="") as fh:
            if args.format == "csv":
                rows = [
                    (
                        p.base.index,
                        format_value(p.base.x),
                        format_value(p.base.y),
                        format_value(p.d_co),
                        format_value(p.le),
                        format_value(p.l),
                        format_value(p.z),
                        p.base.quadrant.value,
                    )
                    for p in tvm_points
                ]
            else:
                rows = [
                    (p.base.index, p.base.x, p.base.y, p.d_co, p.le, p.l, p.z, p.base.quadrant.value)
                    for p in tvm_points
                ]
            _write_point_rows(
                fh,
                args.format,
                rec.source_id,
                ["index", "x", "y", "d_co", "le", "l", "z", "quadrant"],
                rows,
            )
    return 0


def cmd_sweep(args) -> int:
    unit = Unit(args.unit)
    groups = []
    for path in args.inputs:
        group = load_dataset_group(path, unit=unit)
        recordings = _segmented(group.recordings, args.segment_len)
        groups.append(DatasetGroup(name=group.name, recordings=tuple(recordings)))
    table = sweep_r(groups, args.indicator, args.r_grid)

    text = sweep_csv_text(table) if args.format == "csv" else sweep_json_text(table)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


def cmd_classify(args) -> int:
    params = _params(args)
    unit = Unit(args.unit)
    name_a, features_a = _load_group_features(
        args.group_a, unit, params, args.indicator, args.segment_len
    )
    name_b, features_b = _load_group_features(
        args.group_b, unit, params, args.indicator, args.segment_len
    )
    outcome = pairwise_classify(features_a, features_b, label_a=name_a, label_b=name_b)

    fh = _open_out(args.out)
    try:
        if args.format == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["pair", "indicator", "ri"])
            writer.writerow([f"{name_a}|{name_b}", args.indicator, format_value(outcome.ri)])
        else:
            payload = {
                "pair": [name_a, name_b],
                "indicator": args.indicator,
                "ri": round_sig(outcome.ri),
                "centroids": [round_sig(c) for c in outcome.centroids],
                "iterations": outcome.iterations,
                "assignments": list(outcome.assignments),
            }
            fh.write(json.dumps(payload, indent=2) + "\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


_COMMANDS = {
    "indicators": cmd_indicators,
    "points": cmd_points,
    "sweep": cmd_sweep,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (TvmhrvError, OSError, ValueError) as exc:
        print(f"tvmhrv: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
