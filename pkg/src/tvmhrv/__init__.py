"""Temporal variation measure analysis of RR-interval series.

Second-order difference plot indicators (CTM, CCTM, D), the 3-D plot with
its temporal variation entropy, deterministic k-means/RI evaluation, and
batch analysis helpers.
"""

from .analysis import (
    ALL_INDICATORS,
    RADIUS_INDICATORS,
    GroupSummary,
    IndicatorParams,
    IndicatorReport,
    SummaryStats,
    SweepTable,
    aggregate,
    indicator_value,
    report,
    summarize,
    sweep_r,
)
from .cluster import (
    ClusteringOutcome,
    KMeansResult,
    LabeledFeatures,
    classify,
    kmeans_1d,
    pairwise_classify,
    rand_accuracy,
)
from .errors import (
    DistinctValuesError,
    EmptyDirectoryError,
    EmptyInputError,
    NoPointInRadiusError,
    RRParseError,
    RRValidationError,
    TooShortSeriesError,
    TvmhrvError,
)
from .series import (
    DatasetGroup,
    RRSeries,
    Unit,
    load_dataset_group,
    load_rr_series,
    save_rr_series,
    series_from_values,
    split_segments,
)
from .sodp import (
    Quadrant,
    RadiusCounts,
    SodpPoint,
    cctm,
    ctm,
    mean_distance_d,
    point_distances,
    radius_counts,
    second_order_diff,
)
from .tvm import (
    DEFAULT_DIVISIONS,
    GridCell,
    SubspaceGrid,
    TvmPoint,
    TvmResult,
    build_grid,
    build_tvm_points,
    quadrant_etv,
    temporal_variation_entropy,
    tvm_pipeline,
)

__version__ = "0.1.0"
