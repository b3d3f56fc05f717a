"""
Property-based tests for the linear intensity model.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apps.hawkes.kernels import KernelBasis
from apps.hawkes.services import featurize, intensity
from apps.hawkes.types import EventSequence, ModelParams

C, M = 3, 2
BASIS = KernelBasis.exponential([1.0, 3.0])

weights = st.floats(min_value=0.0, max_value=2.0, allow_nan=False)
seeds = st.integers(min_value=0, max_value=2**16)


def random_params(seed: int) -> ModelParams:
    rng = np.random.default_rng(seed)
    return ModelParams(
        rng.uniform(0, 1, (C, M)), rng.uniform(0, 1, (C, C, BASIS.L)), BASIS
    )


def random_sequence(seed: int, n: int = 8) -> EventSequence:
    rng = np.random.default_rng(seed + 1)
    times = np.sort(rng.uniform(0, 10, n))
    return EventSequence(1, times, rng.integers(0, C, n), 10.0)


@pytest.mark.property
class TestIntensityProperties:
    """
    Intensities are linear in θ and nonnegative for nonnegative θ.
    """

    @settings(max_examples=50, deadline=None)
    @given(alpha=weights, beta=weights, seed=seeds)
    def test_intensity_is_linear_in_theta(self, alpha, beta, seed):
        """intensity(αθ1 + βθ2) = α·intensity(θ1) + β·intensity(θ2)."""
        # Arrange
        p1, p2 = random_params(seed), random_params(seed + 7)
        mixed = ModelParams.from_theta(alpha * p1.theta + beta * p2.theta, C, M, BASIS)
        history = random_sequence(seed)

        # Act
        value = intensity(mixed, 1, 2, 10.0, history)

        # Assert
        expected = alpha * intensity(p1, 1, 2, 10.0, history) + beta * intensity(
            p2, 1, 2, 10.0, history
        )
        assert value == pytest.approx(expected, rel=1e-9, abs=1e-12)

    @settings(max_examples=50, deadline=None)
    @given(seed=seeds, J=st.one_of(st.none(), st.integers(min_value=1, max_value=8)))
    def test_point_feature_reproduces_intensity(self, seed, J):
        """xᵀθ at event i equals the intensity given the capped history."""
        params, seq = random_params(seed), random_sequence(seed)
        i = len(seq)

        features = featurize(params, seq, i, J)

        expected = intensity(
            params,
            1,
            int(seq.entities[i - 1]),
            float(seq.times[i - 1]),
            seq.history_before(seq.times[i - 1]),
            J,
        )
        assert features.point_value(params.theta) == pytest.approx(expected, rel=1e-12)
        assert features.x.min() >= 0.0
        assert features.X.min() >= 0.0
