"""
Shared pytest fixtures for all apps.

Provides small hand-checkable models and a seeded synthetic dataset.
"""

import numpy as np
import pytest

from apps.hawkes.kernels import KernelBasis
from apps.hawkes.types import EventSequence, ModelParams
from apps.simulation.services import SimConfig, simulate_dataset


@pytest.fixture
def exp_basis():
    """Single exponential kernel with decay 1."""
    return KernelBasis.exponential(1.0)


@pytest.fixture
def toy_params(exp_basis):
    """C=1, M=1 model with μ=0.5 and a=0.4."""
    return ModelParams(np.array([[0.5]]), np.array([[[0.4]]]), exp_basis)


@pytest.fixture
def toy_sequence():
    """Two entity-0 events at t=0 and t=1 on [0, 2]."""
    return EventSequence(0, np.array([0.0, 1.0]), np.array([0, 0]), 2.0)


@pytest.fixture
def small_params(exp_basis):
    """C=2, M=2 model with strictly positive entries."""
    U = np.array([[0.3, 0.2], [0.1, 0.4]])
    A = np.array([[[0.2], [0.1]], [[0.15], [0.25]]])
    return ModelParams(U, A, exp_basis)


@pytest.fixture
def small_data():
    """Two hand-written sequences over entities {0, 1} on [0, 5]."""
    return [
        EventSequence(
            0, np.array([0.5, 1.0, 1.0, 2.5, 4.0]), np.array([0, 0, 1, 1, 0]), 5.0
        ),
        EventSequence(1, np.array([0.2, 0.9, 3.3]), np.array([1, 0, 1]), 5.0),
    ]


@pytest.fixture
def small_sim_config(exp_basis):
    """C=3, M=4 synthetic protocol, cheap enough for unit tests."""
    return SimConfig(
        C=3, M=4, horizon=20.0, basis=exp_basis, rho=0.5, max_events=30, seed=7
    )


@pytest.fixture
def small_dataset(small_sim_config):
    """(truth, sequences) simulated from small_sim_config."""
    return simulate_dataset(small_sim_config)
