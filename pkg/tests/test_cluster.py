import pytest
from hypothesis import given
from hypothesis import strategies as st

from tvmhrv import (
    DistinctValuesError,
    EmptyInputError,
    LabeledFeatures,
    classify,
    kmeans_1d,
    pairwise_classify,
    rand_accuracy,
)

features = st.lists(
    st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False),
    min_size=2,
    max_size=40,
)


class TestKMeans:
    def test_two_well_separated_triples(self):
        result = kmeans_1d([1.0, 1.1, 0.9, 10.0, 10.2, 9.8])
        assert result.assignments == (0, 0, 0, 1, 1, 1)
        assert result.centroids[0] == pytest.approx(1.0)
        assert result.centroids[1] == pytest.approx(10.0)

    def test_two_points(self):
        result = kmeans_1d([0.0, 10.0])
        assert result.assignments == (0, 1)
        assert result.centroids == (0.0, 10.0)
        assert result.iterations == 1

    def test_identical_values_rejected(self):
        with pytest.raises(DistinctValuesError):
            kmeans_1d([5.0, 5.0, 5.0])

    def test_k_below_two_rejected(self):
        with pytest.raises(ValueError):
            kmeans_1d([1.0, 2.0], k=1)

    def test_three_clusters(self):
        result = kmeans_1d([0.0, 0.1, 5.0, 5.1, 10.0, 10.1], k=3)
        assert result.assignments == (0, 0, 1, 1, 2, 2)
        assert list(result.centroids) == sorted(result.centroids)

    @given(features)
    def test_deterministic(self, values):
        if len(set(values)) < 2:
            values = values + [max(values) + 1.0]
        assert kmeans_1d(values) == kmeans_1d(values)

    @given(features)
    def test_assignments_monotone_in_value(self, values):
        if len(set(values)) < 2:
            values = values + [max(values) + 1.0]
        result = kmeans_1d(values)
        pairs = sorted(zip(values, result.assignments))
        labels = [a for _, a in pairs]
        assert labels == sorted(labels)

    def test_tie_breaks_to_lower_centroid(self):
        # 5 is equidistant from both centroids; it must join cluster 0.
        result = kmeans_1d([0.0, 0.0, 10.0, 10.0, 5.0])
        assert result.assignments[-1] == 0


class TestRandAccuracy:
    def test_perfect_separation(self):
        assert rand_accuracy((0, 0, 1, 1), ("A", "A", "B", "B")) == 1.0

    def test_interleaved_is_half(self):
        assert rand_accuracy((0, 1, 0, 1), ("A", "A", "B", "B")) == 0.5

    def test_bijection_symmetry(self):
        assert rand_accuracy((1, 1, 0, 0), ("A", "A", "B", "B")) == 1.0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            rand_accuracy((0, 1), ("A", "A", "B"))

    def test_single_label_rejected(self):
        with pytest.raises(ValueError):
            rand_accuracy((0, 1), ("A", "A"))

    def test_three_labels_rejected(self):
        with pytest.raises(ValueError):
            rand_accuracy((0, 1, 0), ("A", "B", "C"))

    @given(st.lists(st.sampled_from([0, 1]), min_size=2, max_size=30))
    def test_invariant_under_cluster_and_label_swap(self, assignments):
        truth = tuple("A" if i % 3 else "B" for i in range(len(assignments)))
        if len(set(truth)) != 2:
            truth = ("A",) + truth[1:-1] + ("B",)
        ri = rand_accuracy(assignments, truth)
        assert ri == rand_accuracy([1 - a for a in assignments], truth)
        swapped = tuple("B" if t == "A" else "A" for t in truth)
        assert ri == rand_accuracy(assignments, swapped)
        assert 0.5 <= ri <= 1.0


class TestPairwiseClassify:
    def test_clear_separation(self):
        outcome = pairwise_classify(
            [99.0, 100.0, 101.0], [0.9, 1.0, 1.1], label_a="big", label_b="small"
        )
        assert outcome.ri == 1.0
        assert outcome.centroids[0] < outcome.centroids[1]

    def test_identical_single_values_rejected(self):
        with pytest.raises(DistinctValuesError):
            pairwise_classify([4.2], [4.2])

    def test_adversarial_interleaving_scores_half(self):
        # Both groups contribute the same two extremes, so the Lloyd split
        # cuts across the truth and both bijections get exactly half right.
        outcome = pairwise_classify([0.0, 10.0], [0.0, 10.0])
        assert outcome.ri == 0.5

    def test_overlapping_features_score_at_least_half(self):
        outcome = pairwise_classify([1.0, 3.0, 5.0], [2.0, 4.0, 6.0])
        assert outcome.ri >= 0.5

    def test_empty_group_rejected(self):
        with pytest.raises(EmptyInputError):
            pairwise_classify([], [1.0, 2.0])

    def test_equal_labels_rejected(self):
        with pytest.raises(ValueError):
            pairwise_classify([1.0], [2.0], label_a="x", label_b="x")


class TestLabeledFeatures:
    def test_validates_alignment(self):
        with pytest.raises(ValueError):
            LabeledFeatures(values=(1.0, 2.0), truth=("A",))

    def test_validates_two_labels(self):
        with pytest.raises(ValueError):
            LabeledFeatures(values=(1.0, 2.0), truth=("A", "A"))

    def test_classify_roundtrip(self):
        outcome = classify(LabeledFeatures(values=(1.0, 2.0, 8.0, 9.0), truth=("A", "A", "B", "B")))
        assert outcome.ri == 1.0
        assert outcome.assignments == (0, 0, 1, 1)
