"""RR-interval series: loading, validation, segmentation, serialization.

Accepted on-disk format is plain text: one interval per line, or a single
CSV row/column; blank lines and lines starting with '#' are skipped. Units
are metadata only; nothing downstream converts values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    EmptyDirectoryError,
    RRParseError,
    RRValidationError,
    TooShortSeriesError,
)

RR_EXTENSIONS = (".txt", ".csv")


class Unit(str, Enum):
    MILLISECONDS = "ms"
    SECONDS = "s"
    UNITLESS = "none"


@dataclass(frozen=True)
class RRSeries:
    """An ordered sequence of strictly positive, finite interval durations."""

    intervals: tuple[float, ...]
    unit: Unit = Unit.UNITLESS
    source_id: str = ""

    def __post_init__(self):
        intervals = tuple(float(v) for v in self.intervals)
        object.__setattr__(self, "intervals", intervals)
        if len(intervals) < 3:
            raise TooShortSeriesError(
                f"series {self.source_id!r} has {len(intervals)} intervals; need at least 3"
            )
        for i, v in enumerate(intervals):
            if not math.isfinite(v) or v <= 0.0:
                raise RRValidationError(
                    f"series {self.source_id!r}: interval {i} is {v!r}; "
                    "intervals must be finite and > 0"
                )

    def __len__(self) -> int:
        return len(self.intervals)


@dataclass(frozen=True)
class DatasetGroup:
    """A named collection of recordings, e.g. one directory of RR files."""

    name: str
    recordings: tuple[RRSeries, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not self.name:
            raise ValueError("dataset group name must be non-empty")
        object.__setattr__(self, "recordings", tuple(self.recordings))

    def __len__(self) -> int:
        return len(self.recordings)


def _parse_rr_text(text: str, path) -> list[float]:
    values: list[float] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        for token in stripped.split(","):
            token = token.strip()
            if not token:
                continue
            try:
                value = float(token)
            except ValueError:
                raise RRParseError(
                    f"{path}: line {lineno}: cannot parse {token!r} as a number",
                    path=path,
                    line=lineno,
                ) from None
            if not math.isfinite(value) or value <= 0.0:
                raise RRValidationError(
                    f"{path}: line {lineno}: interval {token!r} must be finite and > 0",
                    path=path,
                    line=lineno,
                )
            values.append(value)
    return values


def load_rr_series(path, unit: Unit = Unit.UNITLESS) -> RRSeries:
    """Load one RR recording from a text file; source_id is the file stem."""
    path = Path(path)
    values = _parse_rr_text(path.read_text(), path)
    if len(values) < 3:
        raise TooShortSeriesError(
            f"{path}: found {len(values)} intervals; need at least 3"
        )
    return RRSeries(intervals=tuple(values), unit=unit, source_id=path.stem)


def save_rr_series(series: RRSeries, path) -> None:
    """Write one interval per line; repr round-trips 64-bit floats exactly."""
    path = Path(path)
    path.write_text("".join(f"{v!r}\n" for v in series.intervals))


def load_dataset_group(directory, unit: Unit = Unit.UNITLESS) -> DatasetGroup:
    """Load every .txt/.csv file in a directory, in lexicographic name order."""
    directory = Path(directory)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a directory")
    files = sorted(
        (p for p in directory.iterdir() if p.suffix.lower() in RR_EXTENSIONS),
        key=lambda p: p.name,
    )
    if not files:
        raise EmptyDirectoryError(f"{directory}: no .txt or .csv recordings found")
    recordings = tuple(load_rr_series(p, unit=unit) for p in files)
    return DatasetGroup(name=directory.name, recordings=recordings)


def split_segments(series: RRSeries, length: int) -> list[RRSeries]:
    """Cut a recording into consecutive non-overlapping segments.

    Each segment has exactly `length` intervals; a trailing partial window is
    dropped. Segment ids are `source#000`, `source#001`, ...
    """
    if length < 3:
        raise ValueError(f"segment length must be >= 3, got {length}")
    segments = []
    for k in range(len(series) // length):
        chunk = series.intervals[k * length : (k + 1) * length]
        segments.append(
            RRSeries(
                intervals=chunk,
                unit=series.unit,
                source_id=f"{series.source_id}#{k:03d}",
            )
        )
    return segments


def series_from_values(
    values: Iterable[float] | Sequence[float],
    unit: Unit = Unit.UNITLESS,
    source_id: str = "",
) -> RRSeries:
    """Convenience constructor for in-memory series."""
    return RRSeries(intervals=tuple(values), unit=unit, source_id=source_id)
