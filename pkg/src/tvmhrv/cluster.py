"""Deterministic 1-D k-means and the correct-decision ratio RI.

The evaluation protocol pits two recording groups against each other: their
scalar indicator values are concatenated, clustered with k=2, and scored by
RI = correct decisions / total decisions under the better of the two
cluster-to-label bijections. Everything here is deterministic: centroids
start at the feature minimum and maximum (evenly spaced in between for
k > 2), distance ties break toward the lower centroid, and there is no
randomness anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import fmean
from typing import Sequence

from .errors import DistinctValuesError, EmptyInputError

MAX_ITERATIONS = 1000


@dataclass(frozen=True)
class LabeledFeatures:
    """One indicator value per recording, aligned with its group label."""

    values: tuple[float, ...]
    truth: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "truth", tuple(self.truth))
        if len(self.values) != len(self.truth):
            raise ValueError(
                f"{len(self.values)} values vs {len(self.truth)} labels"
            )
        if len(set(self.truth)) != 2:
            raise ValueError(
                f"need exactly two distinct labels, got {sorted(set(self.truth))}"
            )


@dataclass(frozen=True)
class KMeansResult:
    assignments: tuple[int, ...]
    centroids: tuple[float, ...]
    iterations: int


@dataclass(frozen=True)
class ClusteringOutcome:
    assignments: tuple[int, ...]
    centroids: tuple[float, float]
    ri: float
    iterations: int


def _assign(values: Sequence[float], centroids: Sequence[float]) -> tuple[int, ...]:
    # Nearest centroid; ties go to the lower centroid (centroids are ascending).
    out = []
    for v in values:
        best = 0
        best_dist = abs(v - centroids[0])
        for j in range(1, len(centroids)):
            dist = abs(v - centroids[j])
            if dist < best_dist:
                best = j
                best_dist = dist
        out.append(best)
    return tuple(out)


def kmeans_1d(values: Sequence[float], k: int = 2) -> KMeansResult:
    """Lloyd iteration on scalars with deterministic extremes initialization."""
    values = [float(v) for v in values]
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    distinct = sorted(set(values))
    if len(distinct) < k:
        raise DistinctValuesError(
            f"k-means with k={k} needs at least {k} distinct values, "
            f"got {len(distinct)}"
        )

    lo, hi = distinct[0], distinct[-1]
    centroids = [lo + (hi - lo) * j / (k - 1) for j in range(k)]
    assignments = _assign(values, centroids)

    iterations = 0
    for _ in range(MAX_ITERATIONS):
        iterations += 1
        new_centroids = []
        for j in range(k):
            members = [v for v, a in zip(values, assignments) if a == j]
            # An empty cluster keeps its previous centroid.
            new_centroids.append(fmean(members) if members else centroids[j])
        new_centroids.sort()
        new_assignments = _assign(values, new_centroids)
        centroids = new_centroids
        if new_assignments == assignments:
            break
        assignments = new_assignments

    return KMeansResult(
        assignments=assignments,
        centroids=tuple(centroids),
        iterations=iterations,
    )


def rand_accuracy(assignments: Sequence[int], truth: Sequence[str]) -> float:
    """CD/TD under the better of the two cluster-to-label bijections."""
    if len(assignments) != len(truth):
        raise ValueError(f"{len(assignments)} assignments vs {len(truth)} labels")
    labels = sorted(set(truth))
    if len(labels) != 2:
        raise ValueError(f"need exactly two distinct labels, got {labels}")
    direct = sum(
        1 for a, t in zip(assignments, truth) if labels[a] == t
    )
    swapped = len(truth) - direct
    return max(direct, swapped) / len(truth)


def classify(features: LabeledFeatures) -> ClusteringOutcome:
    """Cluster labeled features with k=2 and score with RI."""
    result = kmeans_1d(features.values, k=2)
    ri = rand_accuracy(result.assignments, features.truth)
    return ClusteringOutcome(
        assignments=result.assignments,
        centroids=(result.centroids[0], result.centroids[1]),
        ri=ri,
        iterations=result.iterations,
    )


def pairwise_classify(
    features_a: Sequence[float],
    features_b: Sequence[float],
    label_a: str = "a",
    label_b: str = "b",
) -> ClusteringOutcome:
    """Concatenate two groups' features, cluster, and score against the truth."""
    if not features_a or not features_b:
        raise EmptyInputError("both groups must contribute at least one feature")
    if label_a == label_b:
        raise ValueError(f"group labels must differ, both are {label_a!r}")
    features = LabeledFeatures(
        values=tuple(features_a) + tuple(features_b),
        truth=(label_a,) * len(features_a) + (label_b,) * len(features_b),
    )
    return classify(features)
