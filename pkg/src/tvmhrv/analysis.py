"""Per-recording indicator reports, radius sweeps, and group statistics."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import EmptyInputError, NoPointInRadiusError
from .series import DatasetGroup, RRSeries
from .sodp import Quadrant, mean_distance_d, point_distances, radius_counts, second_order_diff
from .tvm import DEFAULT_DIVISIONS, build_grid, build_tvm_points, quadrant_etv, temporal_variation_entropy

RADIUS_INDICATORS = ("ctm", "d", "cctm1", "cctm2", "cctm3", "cctm4")
ENTROPY_INDICATORS = ("etv_global", "etv1", "etv2", "etv3", "etv4")
ALL_INDICATORS = RADIUS_INDICATORS + ENTROPY_INDICATORS

# All emitted numbers are fixed at 9 significant digits for byte-stable files.
def format_value(v: float) -> str:
    return format(v, ".9g")


def round_sig(v: float) -> float:
    """Round to the float nearest the 9-significant-digit decimal."""
    return float(format_value(v))


@dataclass(frozen=True)
class IndicatorParams:
    """Radii and grid divisions behind one report; defaults follow r=3 / r=6."""

    r_ctm: float = 3.0
    r_d: float = 6.0
    divisions: tuple[int, int, int] = DEFAULT_DIVISIONS

    def __post_init__(self):
        if not (self.r_ctm > 0 and self.r_d > 0):
            raise ValueError("radii must be > 0")
        if len(self.divisions) != 3 or any(int(d) != d or d < 1 for d in self.divisions):
            raise ValueError(f"divisions must be three integers >= 1, got {self.divisions}")
        object.__setattr__(self, "divisions", tuple(int(d) for d in self.divisions))


@dataclass(frozen=True)
class IndicatorReport:
    """Every scalar indicator of one recording, with the parameters used."""

    source_id: str
    ctm: float
    cctm: tuple[float, float, float, float]
    d: float | None
    etv_global: float
    etv_quadrant: tuple[float, float, float, float]
    params: IndicatorParams


def report(series: RRSeries, params: IndicatorParams = IndicatorParams()) -> IndicatorReport:
    """Compute all indicators of one recording."""
    points = second_order_diff(series)
    counts = radius_counts(points, params.r_ctm)
    try:
        d_value = mean_distance_d(points, params.r_d)
    except NoPointInRadiusError:
        d_value = None
    tvm_points = build_tvm_points(points)
    grid = build_grid(tvm_points, params.divisions)
    return IndicatorReport(
        source_id=series.source_id,
        ctm=counts.within / counts.total,
        cctm=tuple(q / counts.total for q in counts.quadrant),
        d=d_value,
        etv_global=temporal_variation_entropy(grid),
        etv_quadrant=quadrant_etv(tvm_points, params.divisions),
        params=params,
    )


def indicator_value(rep: IndicatorReport, indicator: str) -> float | None:
    if indicator == "ctm":
        return rep.ctm
    if indicator == "d":
        return rep.d
    if indicator == "etv_global":
        return rep.etv_global
    if indicator.startswith("cctm"):
        return rep.cctm[int(indicator[4:]) - 1]
    if indicator.startswith("etv"):
        return rep.etv_quadrant[int(indicator[3:]) - 1]
    raise ValueError(f"unknown indicator {indicator!r}; expected one of {ALL_INDICATORS}")


@dataclass(frozen=True)
class SweepTable:
    """Group-mean indicator values over an ascending radius grid.

    A row entry is None where no recording of that group produced a value at
    that radius (e.g. D with no point inside r).
    """

    indicator: str
    r_values: tuple[float, ...]
    rows: Mapping[str, tuple[float | None, ...]]

    def __post_init__(self):
        if not self.r_values:
            raise ValueError("r_values must be non-empty")
        if any(b <= a for a, b in zip(self.r_values, self.r_values[1:])):
            raise ValueError(f"r_values must be strictly ascending, got {self.r_values}")
        if any(r <= 0 for r in self.r_values):
            raise ValueError("r_values must be positive")


def _radius_indicator_value(
    distances: np.ndarray, quadrants: np.ndarray, indicator: str, r: float
) -> float | None:
    n = distances.size
    inside = distances < r
    if indicator == "ctm":
        return float(np.count_nonzero(inside)) / n
    if indicator == "d":
        if not inside.any():
            return None
        return float(np.mean(distances[inside]))
    k = int(indicator[4:]) - 1
    return float(np.count_nonzero(inside & (quadrants == k))) / n


_QUADRANT_CODE = {Quadrant.I: 0, Quadrant.II: 1, Quadrant.III: 2, Quadrant.IV: 3, Quadrant.ON_AXIS: 4}


def sweep_r(
    groups: Sequence[DatasetGroup],
    indicator: str,
    r_values: Sequence[float],
) -> SweepTable:
    """Mean indicator value per group at each radius; rows keyed by group name."""
    if indicator not in RADIUS_INDICATORS:
        raise ValueError(
            f"unknown radius indicator {indicator!r}; expected one of {RADIUS_INDICATORS}"
        )
    if not groups:
        raise EmptyInputError("need at least one dataset group")
    r_values = tuple(float(r) for r in r_values)

    rows: dict[str, tuple[float | None, ...]] = {}
    for group in sorted(groups, key=lambda g: g.name):
        if not group.recordings:
            raise EmptyInputError(f"dataset group {group.name!r} has no recordings")
        cached = []
        for rec in sorted(group.recordings, key=lambda s: s.source_id):
            points = second_order_diff(rec)
            cached.append(
                (
                    point_distances(points),
                    np.array([_QUADRANT_CODE[p.quadrant] for p in points]),
                )
            )
        row = []
        for r in r_values:
            values = [
                v
                for dist, quad in cached
                if (v := _radius_indicator_value(dist, quad, indicator, r)) is not None
            ]
            row.append(float(np.mean(values)) if values else None)
        rows[group.name] = tuple(row)
    return SweepTable(indicator=indicator, r_values=r_values, rows=rows)


@dataclass(frozen=True)
class SummaryStats:
    """Five-number summary plus mean/std and the raw per-recording values."""

    n: int
    mean: float
    std: float
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float
    values: tuple[float, ...] = field(repr=False)


@dataclass(frozen=True)
class GroupSummary:
    name: str
    params: IndicatorParams
    stats: Mapping[str, SummaryStats]


def summarize(values: Sequence[float]) -> SummaryStats:
    """Sample statistics: n-1 std (0 for a single value), linear quartiles."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise EmptyInputError("cannot summarize zero values")
    q1, median, q3 = np.percentile(arr, (25.0, 50.0, 75.0))
    # Summation rounding can push the raw mean an ulp past the extremes.
    mean = min(max(float(np.mean(arr)), float(arr.min())), float(arr.max()))
    return SummaryStats(
        n=int(arr.size),
        mean=mean,
        std=float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0,
        minimum=float(arr.min()),
        q1=float(q1),
        median=float(median),
        q3=float(q3),
        maximum=float(arr.max()),
        values=tuple(float(v) for v in arr),
    )


def aggregate(group: DatasetGroup, params: IndicatorParams = IndicatorParams()) -> GroupSummary:
    """Summarize every indicator across a group's recordings.

    Recordings whose D is absent at r_d are left out of the D statistics; an
    indicator with no values at all is omitted from the result.
    """
    if not group.recordings:
        raise EmptyInputError(f"dataset group {group.name!r} has no recordings")
    reports = [report(rec, params) for rec in sorted(group.recordings, key=lambda s: s.source_id)]
    stats = {}
    for indicator in ALL_INDICATORS:
        values = [v for rep in reports if (v := indicator_value(rep, indicator)) is not None]
        if values:
            stats[indicator] = summarize(values)
    return GroupSummary(name=group.name, params=params, stats=stats)


def sweep_csv_text(table: SweepTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dataset", "r", "mean"])
    for name, row in table.rows.items():
        for r, value in zip(table.r_values, row):
            writer.writerow(
                [name, format_value(r), "" if value is None else format_value(value)]
            )
    return buf.getvalue()


def sweep_json_text(table: SweepTable) -> str:
    payload = {
        "indicator": table.indicator,
        "r_values": [round_sig(r) for r in table.r_values],
        "rows": {
            name: [None if v is None else round_sig(v) for v in row]
            for name, row in table.rows.items()
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def summary_csv_text(summaries: Sequence[GroupSummary]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["dataset", "indicator", "n", "mean", "std", "min", "q1", "median", "q3", "max"])
    for summary in summaries:
        for indicator in ALL_INDICATORS:
            if indicator not in summary.stats:
                continue
            s = summary.stats[indicator]
            writer.writerow(
                [summary.name, indicator, s.n]
                + [format_value(v) for v in (s.mean, s.std, s.minimum, s.q1, s.median, s.q3, s.maximum)]
            )
    return buf.getvalue()


def summary_json_text(summaries: Sequence[GroupSummary]) -> str:
    payload = []
    for summary in summaries:
        entry = {"dataset": summary.name, "indicators": {}}
        for indicator, s in summary.stats.items():
            entry["indicators"][indicator] = {
                "n": s.n,
                "mean": round_sig(s.mean),
                "std": round_sig(s.std),
                "min": round_sig(s.minimum),
                "q1": round_sig(s.q1),
                "median": round_sig(s.median),
                "q3": round_sig(s.q3),
                "max": round_sig(s.maximum),
                "values": [round_sig(v) for v in s.values],
            }
        payload.append(entry)
    return json.dumps(payload, indent=2) + "\n"


def write_sweep_csv(table: SweepTable, path) -> None:
    Path(path).write_text(sweep_csv_text(table))


def write_sweep_json(table: SweepTable, path) -> None:
    Path(path).write_text(sweep_json_text(table))


def write_summary_csv(summaries: Sequence[GroupSummary], path) -> None:
    Path(path).write_text(summary_csv_text(summaries))


def write_summary_json(summaries: Sequence[GroupSummary], path) -> None:
    Path(path).write_text(summary_json_text(summaries))
