"""
Fitting one process to merged sequences recovers the summed exogenous rate
and the shared impact.

Deselected by default; run with `pytest -m slow`.
"""

import numpy as np
import pytest

from apps.hawkes.kernels import KernelBasis
from apps.optimization.services import OptConfig, initial_params, stoc_fit
from apps.simulation.services import SimConfig, simulate_dataset
from apps.superposition.services import merge_sequences


@pytest.mark.slow
class TestMergedFit:
    """Ten one-entity agents with distinct μ and a shared a = 0.4."""

    def test_recovers_summed_rate_and_shared_impact(self):
        mu = np.linspace(0.05, 0.15, 10)
        a = 0.4
        basis = KernelBasis.exponential(1.0)

        fitted_mu, fitted_a = [], []
        for seed in range(20):
            cfg = SimConfig(
                C=1,
                M=mu.size,
                horizon=200.0,
                basis=basis,
                max_events=100_000,
                U=mu[None, :],
                A=np.full((1, 1, 1), a),
                seed=seed,
            )
            _, data = simulate_dataset(cfg)
            merged = merge_sequences(data, C=1)
            init = initial_params([merged], C=1, M=1, basis=basis, seed=seed)

            report = stoc_fit([merged], OptConfig(seed=seed), init)

            fitted_mu.append(report.params.U[0, 0])
            fitted_a.append(report.params.A[0, 0, 0])

        assert np.mean(fitted_mu) == pytest.approx(mu.sum(), rel=0.10)
        assert np.mean(fitted_a) == pytest.approx(a, rel=0.15)
