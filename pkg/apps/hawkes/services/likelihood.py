"""
Intensity evaluation and the event-level negative log-likelihood.

    λ_c^m(t) = μ_c^m + Σ_{t_j < t} Σ_l a_{c c_j l} g_l(t - t_j)

    L(θ) = Σ_m Σ_i f_i^m(θ),   f_i^m(θ) = Xᵀθ - log(xᵀθ)

The compensator is partitioned by inter-event intervals, so the tail
(t_I, T] is excluded unless `include_tail` is requested.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np
from django.conf import settings

from apps.hawkes.exceptions import HawkesValidationError
from apps.hawkes.services.features import EventFeatures, FeatureCache
from apps.hawkes.types import EventSequence, ModelParams

logger = logging.getLogger(__name__)


def default_lambda0() -> float:
    """The intensity floor shared by the NLL and the clamped gradient."""
    return float(getattr(settings, "HAWKES_OPT", {}).get("lambda0", 1e-3))


def endogenous_scores(
    params: ModelParams,
    history: EventSequence,
    t: float,
    J: int | None = None,
) -> np.ndarray:
    """
    Σ_j Σ_l a_{c c_j l} g_l(t - t_j) for every entity c.

    Only history events strictly before t count, capped to the J most recent.
    """
    mask = history.times < t
    times, entities = history.times[mask], history.entities[mask]
    if J is not None:
        times, entities = times[-J:], entities[-J:]
    if times.size == 0:
        return np.zeros(params.C)
    kernel = params.basis.evaluate(t - times)  # (k, L)
    return np.einsum("ckl,kl->c", params.A[:, entities, :], kernel)


def intensity(
    params: ModelParams,
    agent: int,
    entity: int,
    t: float,
    history: EventSequence,
    J: int | None = None,
) -> float:
    """
    λ_entity^agent(t) given the history prefix, using at most J history events.

    Raises:
        DimensionError: If agent or entity is out of range.
    """
    params.check_indices(agent, entity)
    if J is not None and J < 1:
        raise HawkesValidationError("History cap J must be at least 1")
    scores = endogenous_scores(params, history, t, J)
    return float(params.U[entity, agent] + scores[entity])


def nll_event(
    params: ModelParams, features: EventFeatures, floor: float | None = None
) -> float:
    """
    f_i(θ) = Xᵀθ - log(max(xᵀθ, floor)).

    The floor defaults to the optimizer offset λ0. Individual terms may be
    negative when xᵀθ > 1 on a short interval.
    """
    floor = default_lambda0() if floor is None else floor
    theta = params.theta
    lam = features.point_value(theta)
    return features.compensator_value(theta) - math.log(max(lam, floor))


def compensator_tail(
    params: ModelParams, sequence: EventSequence, J: int | None = None
) -> float:
    """∫ Σ_c λ_c^m(s) ds over the tail (t_I, T] of a sequence."""
    m = int(sequence.agent_id)
    start = float(sequence.times[-1]) if len(sequence) else 0.0
    mu_total = float(params.U[:, m].sum())
    tail = (sequence.horizon - start) * mu_total
    if len(sequence) == 0:
        return tail
    times, entities = sequence.times, sequence.entities
    if J is not None:
        times, entities = times[-J:], entities[-J:]
    integrals = params.basis.integrate(start - times, sequence.horizon - times)
    spread = params.A.sum(axis=0)  # (C', L)
    return tail + float(np.sum(spread[entities] * integrals))


def nll_total(
    params: ModelParams,
    data: Sequence[EventSequence],
    J: int | None = None,
    include_tail: bool = False,
    floor: float | None = None,
) -> float:
    """
    Σ_{m,i} f_i^m(θ) over every event of every sequence.

    Empty sequences contribute nothing unless `include_tail` adds their
    compensator over [0, T].
    """
    if not data:
        raise HawkesValidationError("nll_total needs at least one sequence")
    floor = default_lambda0() if floor is None else floor
    cache = FeatureCache(data, params.basis, J)
    cache.check_params(params)
    total = float(np.sum(cache.nll(params, floor))) if len(cache) else 0.0
    if include_tail:
        total += sum(compensator_tail(params, seq, J) for seq in data)
    return total


def branching_matrix(params: ModelParams) -> np.ndarray:
    """Γ_cc' = Σ_l a_cc'l ∫_0^∞ g_l, the mean offspring counts."""
    return np.einsum("ijl,l->ij", params.A, params.basis.total_mass())


def spectral_radius(params: ModelParams) -> float:
    """Largest |eigenvalue| of the branching matrix; < 1 means stationary."""
    return float(np.max(np.abs(np.linalg.eigvals(branching_matrix(params)))))
