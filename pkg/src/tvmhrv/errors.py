"""Exception types raised across the package."""

from __future__ import annotations


class TvmhrvError(Exception):
    """Base class for all package-specific errors."""


class RRParseError(TvmhrvError):
    """A token in an RR text file could not be read as a number."""

    def __init__(self, message: str, path=None, line: int | None = None):
        super().__init__(message)
        self.path = path
        self.line = line


class RRValidationError(TvmhrvError):
    """An interval value violates the RR-series invariants (finite, > 0)."""

    def __init__(self, message: str, path=None, line: int | None = None):
        super().__init__(message)
        self.path = path
        self.line = line


class TooShortSeriesError(TvmhrvError):
    """Fewer than 3 intervals: no second-order difference point exists."""


class EmptyDirectoryError(TvmhrvError):
    """A dataset directory contains no loadable recordings."""


class EmptyInputError(TvmhrvError):
    """An operation that needs at least one point/recording got none."""


class NoPointInRadiusError(TvmhrvError):
    """No point lies strictly inside the requested radius."""


class DistinctValuesError(TvmhrvError):
    """k-means needs at least k distinct feature values."""
