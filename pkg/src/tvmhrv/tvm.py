"""Three-dimensional second-order difference plot and its entropy indicator.

Each plot point gains a third coordinate fusing two views of the local RR
dynamics: d_co = |y| - |x| (is the change accelerating toward the vertical
or the horizontal axis?) and a sigmoid-scaled Euclidean distance

    le = sqrt(x^2 + y^2)
    l  = 1 / (1 + exp(-le / mean_le))        # in [0.5, 1)
    z  = d_co * l

where mean_le is taken over the whole point set. The cuboid spanned by the
per-axis extremes of (x, y, z) is cut into equal subspaces and the temporal
variation entropy sums, over subspaces,

    n_i * (sum of |z| in the cell) * p_i * (-ln p_i),   p_i = |n_i - m| / M

with m = M / N the average occupancy over all N cells (empty ones included)
and the usual 0*log(0) = 0 convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import EmptyInputError
from .series import RRSeries
from .sodp import Quadrant, SodpPoint, second_order_diff

DEFAULT_DIVISIONS = (10, 10, 10)


@dataclass(frozen=True)
class TvmPoint:
    """A plot point lifted to three dimensions; d_co, le and z are derived."""

    base: SodpPoint
    l: float
    d_co: float = field(init=False)
    le: float = field(init=False)
    z: float = field(init=False)

    def __post_init__(self):
        if not (0.5 <= self.l < 1.0):
            raise ValueError(f"sigmoid scale l must lie in [0.5, 1), got {self.l}")
        object.__setattr__(self, "d_co", abs(self.base.y) - abs(self.base.x))
        object.__setattr__(self, "le", self.base.distance)
        object.__setattr__(self, "z", self.d_co * self.l)


@dataclass(frozen=True)
class GridCell:
    count: int
    abs_z_sum: float


@dataclass(frozen=True)
class SubspaceGrid:
    """Bounding cuboid of a point set, cut into equal-width subspaces.

    `divisions` are the effective per-axis bin counts: an axis whose extent
    is zero collapses to a single bin whatever was requested. `cells` holds
    only occupied cells; empty ones still count toward `n_cells`.
    """

    bounds: tuple[tuple[float, float], tuple[float, float], tuple[float, float]]
    divisions: tuple[int, int, int]
    cells: Mapping[tuple[int, int, int], GridCell]
    total_points: int

    @property
    def n_cells(self) -> int:
        nx, ny, nz = self.divisions
        return nx * ny * nz


def build_tvm_points(points: Sequence[SodpPoint]) -> list[TvmPoint]:
    """Lift plot points to 3-D; mean_le is computed once over all inputs.

    If every point sits at the origin, mean_le is 0 and the sigmoid argument
    is taken as 0, so l = 0.5 for all points (z is 0 anyway since d_co = 0).
    """
    if not points:
        raise EmptyInputError("need at least one plot point")
    les = [p.distance for p in points]
    mean_le = math.fsum(les) / len(les)
    out = []
    for p, le in zip(points, les):
        if mean_le == 0.0:
            l = 0.5
        else:
            l = 1.0 / (1.0 + math.exp(-le / mean_le))
        out.append(TvmPoint(base=p, l=l))
    return out


def _axis_bins(values: Sequence[float], requested: int) -> tuple[float, float, int]:
    lo = min(values)
    hi = max(values)
    return lo, hi, 1 if hi == lo else requested


def _bin_index(value: float, lo: float, hi: float, k: int) -> int:
    if k == 1:
        return 0
    # Half-open equal-width bins; the clamp closes the last bin at the top.
    idx = int((value - lo) / (hi - lo) * k)
    return min(idx, k - 1)


def build_grid(
    points: Sequence[TvmPoint], divisions: tuple[int, int, int] = DEFAULT_DIVISIONS
) -> SubspaceGrid:
    """Bin points into the bounding cuboid spanned by their extremes."""
    if not points:
        raise EmptyInputError("need at least one 3-D point")
    for d in divisions:
        if int(d) != d or d < 1:
            raise ValueError(f"divisions must be integers >= 1, got {divisions}")

    xs = [p.base.x for p in points]
    ys = [p.base.y for p in points]
    zs = [p.z for p in points]
    axes = (
        _axis_bins(xs, divisions[0]),
        _axis_bins(ys, divisions[1]),
        _axis_bins(zs, divisions[2]),
    )

    members: dict[tuple[int, int, int], list[float]] = {}
    for x, y, z in zip(xs, ys, zs):
        key = (
            _bin_index(x, *axes[0]),
            _bin_index(y, *axes[1]),
            _bin_index(z, *axes[2]),
        )
        members.setdefault(key, []).append(abs(z))

    # fsum is correctly rounded, so cell sums do not depend on point order.
    cells = {
        key: GridCell(count=len(vals), abs_z_sum=math.fsum(vals))
        for key, vals in members.items()
    }
    return SubspaceGrid(
        bounds=tuple((lo, hi) for lo, hi, _ in axes),
        divisions=tuple(k for _, _, k in axes),
        cells=cells,
        total_points=len(points),
    )


def temporal_variation_entropy(grid: SubspaceGrid) -> float:
    """E_TV of a grid; natural log, 0*log(0) terms contribute nothing."""
    if grid.total_points < 1:
        raise EmptyInputError("grid holds no points")
    m_total = grid.total_points
    m_bar = m_total / grid.n_cells
    terms = []
    for key in sorted(grid.cells):
        cell = grid.cells[key]
        p = abs(cell.count - m_bar) / m_total
        if p == 0.0:
            continue
        terms.append(cell.count * cell.abs_z_sum * p * (-math.log(p)))
    return math.fsum(terms)


def quadrant_etv(
    points: Sequence[TvmPoint], divisions: tuple[int, int, int] = DEFAULT_DIVISIONS
) -> tuple[float, float, float, float]:
    """E_TV per quadrant, each over a fresh grid spanning only that quadrant.

    The sigmoid scale l keeps its global mean_le; only the spatial filtering
    and bounding box are quadrant-local. An empty quadrant reports 0.
    """
    if not points:
        raise EmptyInputError("need at least one 3-D point")
    out = []
    for quadrant in (Quadrant.I, Quadrant.II, Quadrant.III, Quadrant.IV):
        selected = [p for p in points if p.base.quadrant is quadrant]
        if not selected:
            out.append(0.0)
        else:
            out.append(temporal_variation_entropy(build_grid(selected, divisions)))
    return (out[0], out[1], out[2], out[3])


@dataclass(frozen=True)
class TvmResult:
    points: tuple[TvmPoint, ...]
    etv_global: float
    etv_quadrant: tuple[float, float, float, float]


def tvm_pipeline(
    series: RRSeries, divisions: tuple[int, int, int] = DEFAULT_DIVISIONS
) -> TvmResult:
    """series -> plot points -> 3-D points -> global and per-quadrant E_TV."""
    points = build_tvm_points(second_order_diff(series))
    grid = build_grid(points, divisions)
    return TvmResult(
        points=tuple(points),
        etv_global=temporal_variation_entropy(grid),
        etv_quadrant=quadrant_etv(points, divisions),
    )
