"""
Unit tests for featurization, intensities and the event-level NLL.
"""

import math

import numpy as np
import pytest
from scipy import integrate

from apps.hawkes.exceptions import (
    DimensionError,
    EventIndexError,
    HawkesValidationError,
)
from apps.hawkes.services import (
    FeatureCache,
    branching_matrix,
    compensator_tail,
    endogenous_scores,
    featurize,
    intensity,
    nll_event,
    nll_total,
    spectral_radius,
)
from apps.hawkes.types import EventSequence, ModelParams

E = math.exp(-1.0)


@pytest.mark.unit
class TestIntensity:
    """Tests for intensity."""

    def test_empty_history_returns_exogenous_rate(self, exp_basis):
        """With no history only μ remains."""
        params = ModelParams(np.array([[0.3]]), np.array([[[0.9]]]), exp_basis)

        value = intensity(params, 0, 0, 1.0, EventSequence.empty(0, 5.0))

        assert value == pytest.approx(0.3)

    def test_one_history_event(self, toy_params):
        """0.5 + 0.4 e^{-1} at lag 1."""
        history = EventSequence(0, np.array([1.0]), np.array([0]), 5.0)

        value = intensity(toy_params, 0, 0, 2.0, history)

        assert value == pytest.approx(0.5 + 0.4 * E, rel=1e-12)
        assert value == pytest.approx(0.647151, abs=1e-6)

    def test_zero_impact_is_poisson(self, small_data):
        """A ≡ 0 leaves μ whatever the history."""
        params = ModelParams(np.array([[0.3, 0.2], [0.1, 0.4]]), np.zeros((2, 2, 1)))

        value = intensity(params, 1, 1, 4.5, small_data[1])

        assert value == pytest.approx(0.4)

    def test_history_cap_keeps_most_recent(self, toy_params):
        """J = 1 only counts the latest event before t."""
        history = EventSequence(0, np.array([0.0, 1.0]), np.array([0, 0]), 5.0)

        value = intensity(toy_params, 0, 0, 2.0, history, J=1)

        assert value == pytest.approx(0.5 + 0.4 * E)

    def test_index_out_of_range(self, toy_params):
        """Unknown agents raise a dimension error."""
        with pytest.raises(DimensionError):
            intensity(toy_params, 3, 0, 1.0, EventSequence.empty(0, 5.0))

    def test_matches_brute_force(self, small_params, small_data):
        """Full-history intensity equals a direct double sum."""
        seq, t = small_data[0], 4.5

        expected = small_params.U[1, 0] + sum(
            small_params.A[1, c, 0] * math.exp(-(t - s))
            for s, c in zip(seq.times, seq.entities)
        )

        value = intensity(small_params, 0, 1, t, seq)

        assert value == pytest.approx(expected, rel=1e-12)

    def test_endogenous_scores_ignore_future_events(self, toy_params):
        """Events at or after t do not score."""
        history = EventSequence(0, np.array([1.0, 3.0]), np.array([0, 0]), 5.0)

        scores = endogenous_scores(toy_params, history, 2.0)

        assert scores[0] == pytest.approx(0.4 * E)


@pytest.mark.unit
class TestFeaturize:
    """Tests for featurize."""

    def test_first_event_has_no_impact_features(self, small_params, small_data):
        """The A-block of x is empty for i = 1."""
        features = featurize(small_params, small_data[0], 1, None)

        x = features.x.toarray().ravel()

        assert not x[small_params.C * small_params.M :].any()
        assert x[small_params.u_index(0, 0)] == 1.0

    def test_interval_integral_of_history_event(self, toy_params, toy_sequence):
        """History at t=0 over (0, 1] integrates to 1 - e^{-1}."""
        features = featurize(toy_params, toy_sequence, 2, None)

        X = features.X.toarray().ravel()
        quad, _ = integrate.quad(lambda s: math.exp(-s), 0.0, 1.0)

        assert X[toy_params.a_index(0, 0, 0)] == pytest.approx(1.0 - E, abs=1e-15)
        assert X[toy_params.a_index(0, 0, 0)] == pytest.approx(quad, abs=1e-9)

    def test_interval_feature_of_exogenous_block(self, exp_basis):
        """X holds C entries equal to the interval in the agent's column."""
        params = ModelParams.zeros(3, 2, exp_basis)
        seq = EventSequence(1, np.array([0.7]), np.array([2]), 5.0)

        X = featurize(params, seq, 1, None).X.toarray().ravel()
        U_block = X[: params.C * params.M].reshape(params.C, params.M)

        np.testing.assert_allclose(U_block[:, 1], [0.7, 0.7, 0.7])
        assert not U_block[:, 0].any()

    def test_features_nonnegative(self, small_params, small_data):
        """Every feature entry is nonnegative."""
        for seq in small_data:
            for i in range(1, len(seq) + 1):
                features = featurize(small_params, seq, i, 2)
                assert features.x.min() >= 0.0
                assert features.X.min() >= 0.0

    @pytest.mark.parametrize("i", [0, 3])
    def test_event_index_checked(self, toy_params, toy_sequence, i):
        """i must lie in [1, n]."""
        with pytest.raises(EventIndexError):
            featurize(toy_params, toy_sequence, i, None)


@pytest.mark.unit
class TestNegativeLogLikelihood:
    """Tests for nll_event and nll_total."""

    def test_poisson_event(self, exp_basis):
        """(0.5 + 0.5)·1 - log 0.5."""
        params = ModelParams(np.array([[0.5], [0.5]]), np.zeros((2, 2, 1)), exp_basis)
        seq = EventSequence(0, np.array([1.0]), np.array([0]), 2.0)

        value = nll_event(params, featurize(params, seq, 1, None))

        assert value == pytest.approx(1.0 - math.log(0.5), rel=1e-12)
        assert value == pytest.approx(1.693147, abs=1e-6)

    def test_two_event_toy(self, toy_params, toy_sequence):
        """Second toy event: compensator minus log intensity."""
        expected = (0.5 + 0.4 * (1.0 - E)) - math.log(0.5 + 0.4 * E)

        value = nll_event(toy_params, featurize(toy_params, toy_sequence, 2, None))

        assert value == pytest.approx(expected, rel=1e-12)

    def test_floor_clamps_log(self, exp_basis):
        """A zero intensity is read as the floor."""
        params = ModelParams.zeros(1, 1, exp_basis)
        seq = EventSequence(0, np.array([1.0]), np.array([0]), 2.0)

        value = nll_event(params, featurize(params, seq, 1, None), floor=1e-3)

        assert value == pytest.approx(-math.log(1e-3))

    def test_total_of_single_event(self, toy_params):
        """One event: nll_total equals nll_event."""
        seq = EventSequence(0, np.array([0.4]), np.array([0]), 2.0)

        total = nll_total(toy_params, [seq])

        assert total == pytest.approx(
            nll_event(toy_params, featurize(toy_params, seq, 1, None))
        )

    def test_total_is_additive_over_agents(self, small_params, small_data):
        """Independent agents add up."""
        both = nll_total(small_params, small_data)

        parts = nll_total(small_params, small_data[:1]) + nll_total(
            small_params, small_data[1:]
        )

        assert both == pytest.approx(parts, rel=1e-12)

    def test_total_matches_event_sum(self, small_params, small_data):
        """nll_total sums nll_event over every event."""
        expected = sum(
            nll_event(small_params, featurize(small_params, seq, i, 3))
            for seq in small_data
            for i in range(1, len(seq) + 1)
        )

        assert nll_total(small_params, small_data, J=3) == pytest.approx(
            expected, rel=1e-12
        )

    def test_tail_is_opt_in(self, toy_params, toy_sequence):
        """include_tail adds the compensator over (t_I, T]."""
        base = nll_total(toy_params, [toy_sequence])

        with_tail = nll_total(toy_params, [toy_sequence], include_tail=True)
        tail = compensator_tail(toy_params, toy_sequence)

        # μ·(2 - 1) plus a·∫ over (1, 2] of both history kernels
        expected_tail = 0.5 + 0.4 * ((E - E**2) + (1.0 - E))
        assert tail == pytest.approx(expected_tail, rel=1e-12)
        assert with_tail == pytest.approx(base + tail)

    def test_empty_dataset_rejected(self, toy_params):
        with pytest.raises(HawkesValidationError):
            nll_total(toy_params, [])


@pytest.mark.unit
class TestFeatureCache:
    """Tests for the batched feature cache."""

    def test_matches_featurize(self, small_params, small_data):
        """Cached intensities and compensators equal per-event features."""
        cache = FeatureCache(small_data, small_params.basis, 2)
        theta = small_params.theta

        expected_lam, expected_comp = [], []
        for seq in small_data:
            for i in range(1, len(seq) + 1):
                features = featurize(small_params, seq, i, 2)
                expected_lam.append(features.point_value(theta))
                expected_comp.append(features.compensator_value(theta))

        np.testing.assert_allclose(cache.intensities(small_params), expected_lam)
        np.testing.assert_allclose(cache.compensators(small_params), expected_comp)

    def test_touched_nonzeros(self, toy_params, toy_sequence):
        """1 + C per event plus 2·L per contributing history event."""
        cache = FeatureCache([toy_sequence], toy_params.basis, None)

        assert cache.touched_nonzeros(toy_params.C) == 2 + 4

    def test_dimension_check(self, toy_params, small_data):
        """Data indices must fit the model."""
        cache = FeatureCache(small_data, toy_params.basis, None)

        with pytest.raises(DimensionError):
            cache.check_params(toy_params)


@pytest.mark.unit
class TestStationarity:
    """Tests for the branching matrix."""

    def test_branching_ratio(self, toy_params):
        """a/w for one exponential kernel."""
        assert branching_matrix(toy_params)[0, 0] == pytest.approx(0.4)
        assert spectral_radius(toy_params) == pytest.approx(0.4)
