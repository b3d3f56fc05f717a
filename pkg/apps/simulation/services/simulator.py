"""
Branching-process (cluster) simulation of multi-agent Hawkes processes.

Immigrants of entity c arrive as a homogeneous Poisson process with rate
μ_c^m on [0, T]. Every event (t_j, c') then spawns, for each entity c and
kernel l, a Poisson number of children with mean a_cc'l ∫_0^{T-t_j} g_l,
placed at t_j + lag with lag drawn from g_l truncated to [0, T - t_j].
Generations repeat until no event has children inside the window.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
from django.conf import settings

from apps.hawkes.kernels import KernelBasis
from apps.hawkes.random import rng_stream
from apps.hawkes.services import spectral_radius
from apps.hawkes.types import EventSequence, ModelParams
from apps.simulation.exceptions import SimConfigError, StationarityError

logger = logging.getLogger(__name__)

PARAMS_STREAM = 0
AGENT_STREAM = 1


@dataclass(frozen=True, eq=False)
class SimConfig:
    """
    Synthetic protocol configuration.

    U and A are drawn at random unless explicit arrays are supplied: U
    uniformly on [0, 1/C], A uniformly and then rescaled so that the C x C
    slice-sum Σ_l A[:, :, l] has spectral norm rho.
    """

    C: int = 20
    M: int = 100
    horizon: float = 50.0
    basis: KernelBasis = field(default_factory=KernelBasis.exponential)
    rho: float = 0.7
    max_events: int = 100
    seed: int = 0
    U: np.ndarray | None = None
    A: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.C < 1 or self.M < 1:
            raise SimConfigError("C and M must be positive")
        if not self.horizon > 0:
            raise SimConfigError("Horizon T must be positive")
        if self.max_events < 1:
            raise SimConfigError("max_events must be at least 1")
        if self.rho < 0:
            raise SimConfigError("Spectral norm target must be nonnegative")
        if self.A is None and self.basis.L == 1 and self.rho >= 1:
            raise StationarityError(
                "Spectral norm target rho >= 1 is nonstationary for L = 1",
                details={"rho": self.rho},
            )

    @property
    def L(self) -> int:
        return self.basis.L

    @classmethod
    def from_settings(cls, **overrides: Any) -> SimConfig:
        """Synthetic-protocol defaults from settings, then explicit overrides."""
        base = dict(getattr(settings, "HAWKES_SIM", {}))
        base.pop("L", None)
        base.update({k: v for k, v in overrides.items() if v is not None})
        base.setdefault("basis", KernelBasis.from_settings())
        return cls(**base)

    def with_seed(self, seed: int) -> SimConfig:
        return replace(self, seed=seed)


def generate_params(cfg: SimConfig) -> ModelParams:
    """
    Draw the ground-truth parameters of a synthetic dataset.

    Deterministic for a given seed. With rho = 0 the impact tensor is zero.
    """
    rng = rng_stream(cfg.seed, PARAMS_STREAM)
    C, M, L = cfg.C, cfg.M, cfg.L

    if cfg.U is not None:
        U = np.asarray(cfg.U, dtype=float)
    else:
        U = rng.uniform(0.0, 1.0 / C, size=(C, M))

    if cfg.A is not None:
        A = np.asarray(cfg.A, dtype=float).reshape(C, C, L)
    else:
        raw = rng.uniform(0.0, 1.0, size=(C, C, L))
        norm = np.linalg.norm(raw.sum(axis=2), ord=2)
        A = raw * (cfg.rho / norm) if cfg.rho > 0 and norm > 0 else np.zeros_like(raw)

    params = ModelParams(U, A, cfg.basis)
    logger.info(
        f"Generated ground truth C={C} M={M} L={L} rho={cfg.rho} "
        f"radius={spectral_radius(params):.4f}"
    )
    return params


def planted_params(
    C: int,
    M: int,
    strength: float = 0.6,
    groups: int = 4,
    mu: float = 0.2,
    seed: int = 0,
    basis: KernelBasis | None = None,
) -> tuple[ModelParams, np.ndarray]:
    """
    Ground truth with one dominant target per source entity.

    Each entity c' triggers mostly entity targets[c'] (a random permutation)
    with weight `strength`; all other coefficients stay below 1% of it.
    Agents fall into `groups` clusters whose exogenous intensities sit on
    disjoint entity blocks, so preferences of different clusters are nearly
    orthogonal.

    Returns:
        The parameters and the planted target of every source entity.
    """
    basis = basis or KernelBasis.exponential()
    rng = rng_stream(seed, PARAMS_STREAM)
    targets = rng.permutation(C)

    A = rng.uniform(0.0, 0.01 * strength / C, size=(C, C, basis.L))
    A[targets, np.arange(C), 0] = strength

    U = rng.uniform(0.0, 0.01 * mu, size=(C, M))
    blocks = np.array_split(np.arange(C), max(1, min(groups, C)))
    membership = rng.integers(0, len(blocks), size=M)
    for m in range(M):
        block = blocks[membership[m]]
        U[block, m] = rng.uniform(0.5 * mu, mu, size=block.size) / block.size

    return ModelParams(U, A, basis), targets


def spawn_children(
    params: ModelParams,
    parent_t: np.ndarray,
    parent_c: np.ndarray,
    horizon: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    One generation of offspring.

    Parent j spawns a Poisson number of entity-c children through kernel l
    with mean a_{c c_j l} ∫_0^{T - t_j} g_l, each at t_j plus a lag drawn
    from g_l truncated to [0, T - t_j].

    Returns:
        Child times, child entities and the index of every child's parent.
    """
    remaining = horizon - parent_t
    mass = params.basis.total_mass(remaining)  # (P, L)
    child_t, child_c, child_p = [], [], []
    for l in range(params.basis.L):
        means = params.A[:, parent_c, l] * mass[None, :, l]  # (C, P)
        offspring = rng.poisson(means)
        if not offspring.any():
            continue
        c_idx, p_idx = np.nonzero(offspring)
        reps = offspring[c_idx, p_idx]
        c_rep, p_rep = np.repeat(c_idx, reps), np.repeat(p_idx, reps)
        lags = params.basis.sample_lags(l, remaining[p_rep], rng)
        child_t.append(parent_t[p_rep] + lags)
        child_c.append(c_rep)
        child_p.append(p_rep)

    if not child_t:
        return np.zeros(0), np.zeros(0, dtype=int), np.zeros(0, dtype=int)
    return np.concatenate(child_t), np.concatenate(child_c), np.concatenate(child_p)


def simulate_sequence(
    params: ModelParams,
    agent: int,
    horizon: float,
    max_events: int | None,
    rng: np.random.Generator,
) -> EventSequence:
    """
    One agent's sequence on [0, T], truncated to its earliest max_events.

    Raises:
        StationarityError: If the branching matrix has spectral radius >= 1.
    """
    radius = spectral_radius(params)
    if radius >= 1.0:
        raise StationarityError(details={"spectral_radius": radius})
    params.check_indices(agent, 0)
    C = params.C

    counts = rng.poisson(params.U[:, agent] * horizon)
    parent_c = np.repeat(np.arange(C), counts)
    parent_t = rng.uniform(0.0, horizon, size=parent_c.size)
    times, entities = [parent_t], [parent_c]
    accepted = parent_t.size

    while parent_t.size:
        if max_events is not None and accepted >= max_events:
            # Later events cannot enter the earliest max_events, nor can their
            # descendants.
            cutoff = np.partition(np.concatenate(times), max_events - 1)[
                max_events - 1
            ]
            keep = parent_t <= cutoff
            parent_t, parent_c = parent_t[keep], parent_c[keep]
            if not parent_t.size:
                break

        child_t, child_c, _ = spawn_children(params, parent_t, parent_c, horizon, rng)
        if not child_t.size:
            break
        inside = child_t <= horizon
        parent_t, parent_c = child_t[inside], child_c[inside]
        times.append(parent_t)
        entities.append(parent_c)
        accepted += parent_t.size

    all_t, all_c = np.concatenate(times), np.concatenate(entities)
    order = np.lexsort((all_c, all_t))
    if max_events is not None:
        order = order[:max_events]
    return EventSequence(agent, all_t[order], all_c[order], horizon)


def simulate_dataset(cfg: SimConfig) -> tuple[ModelParams, list[EventSequence]]:
    """
    Ground truth plus one sequence per agent.

    Agent m draws from its own stream keyed by (seed, m), so the output does
    not depend on the order agents are simulated in.
    """
    params = generate_params(cfg)
    data = [
        simulate_sequence(
            params,
            m,
            cfg.horizon,
            cfg.max_events,
            rng_stream(cfg.seed, AGENT_STREAM, m),
        )
        for m in range(cfg.M)
    ]
    total = sum(len(s) for s in data)
    logger.info(f"Simulated {len(data)} sequences with {total} events")
    return params, data
