"""
Unit tests for sequence merging and exogenous estimates.
"""

import numpy as np
import pytest

from apps.hawkes.types import EventSequence
from apps.superposition.exceptions import MergeError
from apps.superposition.services import (
    estimate_exogenous,
    exogenous_estimates,
    merge_sequences,
    orthogonality_gram,
)


@pytest.mark.unit
class TestMergeSequences:
    """Tests for merge_sequences."""

    def test_merge_with_empty_is_relabel(self, small_data):
        """Merging with an empty sequence returns the events unchanged."""
        merged = merge_sequences([EventSequence.empty(4, 5.0), small_data[0]], 7)

        assert merged.agent_id == 7
        assert merged.same_events(small_data[0])

    def test_sorted_by_time(self):
        a = EventSequence(0, np.array([1.0]), np.array([0]), 2.0)
        b = EventSequence(1, np.array([0.5]), np.array([1]), 2.0)

        merged = merge_sequences([a, b])

        assert merged.events == [(0.5, 1), (1.0, 0)]

    def test_counting_identity(self, small_data):
        """N(t) = Σ_m N^m(t) at every event time."""
        merged = merge_sequences(small_data)

        for t in merged.times:
            assert merged.counting(t) == sum(s.counting(t) for s in small_data)
        assert len(merged) == sum(len(s) for s in small_data)

    def test_ties_broken_by_source_then_entity(self):
        a = EventSequence(0, np.array([1.0]), np.array([2]), 2.0)
        b = EventSequence(1, np.array([1.0]), np.array([0]), 2.0)

        merged = merge_sequences([a, b])

        assert merged.entities.tolist() == [2, 0]

    def test_horizon_mismatch(self):
        with pytest.raises(MergeError):
            merge_sequences([EventSequence.empty(0, 1.0), EventSequence.empty(1, 2.0)])

    def test_entity_outside_range(self, small_data):
        with pytest.raises(MergeError):
            merge_sequences(small_data, C=1)

    def test_duplicate_event(self):
        """The same (time, entity) in two sources breaks the sequence invariant."""
        a = EventSequence(0, np.array([1.0]), np.array([0]), 2.0)

        with pytest.raises(MergeError):
            merge_sequences([a, a.relabel(1)])

    def test_nothing_to_merge(self):
        with pytest.raises(MergeError):
            merge_sequences([])


@pytest.mark.unit
class TestExogenousEstimates:
    """Tests for count-based intensity estimates."""

    def test_empty_sequence(self):
        assert not estimate_exogenous(EventSequence.empty(0, 5.0), 3).any()

    def test_count_over_horizon(self):
        """10 entity-1 events on [0, 50] estimate μ_1 = 0.2."""
        seq = EventSequence(0, np.linspace(1, 10, 10), np.ones(10, dtype=int), 50.0)

        assert estimate_exogenous(seq, 2).tolist() == [0.0, 0.2]

    def test_merged_estimate_is_sum(self, small_data):
        merged = merge_sequences(small_data)

        expected = exogenous_estimates(small_data, 2).sum(axis=1)

        np.testing.assert_allclose(estimate_exogenous(merged, 2), expected)

    def test_estimates_matrix_shape(self, small_data):
        assert exogenous_estimates(small_data, 3).shape == (3, 2)
        assert exogenous_estimates([], 3).shape == (3, 0)


@pytest.mark.unit
class TestOrthogonalityGram:
    """Tests for orthogonality_gram."""

    def test_orthonormal_columns(self):
        np.testing.assert_array_equal(orthogonality_gram(np.eye(3)), np.eye(3))

    def test_duplicated_column_is_rank_deficient(self):
        U = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 1.0]])

        assert np.linalg.matrix_rank(orthogonality_gram(U)) < 3

    def test_random_columns_symmetric_psd(self):
        U = np.random.default_rng(0).random((4, 6))

        gram = orthogonality_gram(U)

        np.testing.assert_allclose(gram, gram.T)
        assert np.linalg.eigvalsh(gram).min() > -1e-12
