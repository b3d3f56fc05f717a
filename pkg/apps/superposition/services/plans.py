"""
K-nonaugmented superposition plans.

A plan partitions the M source agents into M' folders of at most K agents
each. Merging every folder yields M' sequences of HP(UP, A), where P is the
binary M x M' assignment matrix.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import special

from apps.hawkes.random import rng_stream
from apps.hawkes.types import EventSequence, ModelParams
from apps.superposition.exceptions import PlanError
from apps.superposition.services.merge import exogenous_estimates, merge_sequences

logger = logging.getLogger(__name__)

PLAN_STREAM = 3


@dataclass(frozen=True)
class SuperpositionPlan:
    """
    Assignment of source agents to folders.

    Attributes:
        folders: Source indices of every folder, in merge order.
        M: Number of source agents.
    """

    folders: tuple[tuple[int, ...], ...]
    M: int

    def __post_init__(self) -> None:
        folders = tuple(tuple(int(m) for m in f) for f in self.folders)
        object.__setattr__(self, "folders", folders)
        if not folders:
            raise PlanError("A plan needs at least one folder")
        if any(not f for f in folders):
            raise PlanError("Folders must be nonempty")
        sources = sorted(m for f in folders for m in f)
        if sources != list(range(self.M)):
            raise PlanError(
                "Every source must be assigned to exactly one folder",
                details={"M": self.M, "assigned": len(sources)},
            )

    @classmethod
    def identity(cls, M: int) -> SuperpositionPlan:
        return cls(tuple((m,) for m in range(M)), M)

    @classmethod
    def from_json(cls, folders: list[list[int]]) -> SuperpositionPlan:
        return cls(tuple(tuple(f) for f in folders), sum(len(f) for f in folders))

    def to_json(self) -> list[list[int]]:
        return [list(f) for f in self.folders]

    @property
    def n_folders(self) -> int:
        """M'."""
        return len(self.folders)

    @property
    def K(self) -> int:
        """Largest folder size."""
        return max(len(f) for f in self.folders)

    @property
    def assignment(self) -> np.ndarray:
        """Folder index of every source agent."""
        out = np.empty(self.M, dtype=np.int64)
        for j, folder in enumerate(self.folders):
            out[list(folder)] = j
        return out

    def matrix(self) -> np.ndarray:
        """Binary M x M' matrix P with P·1 = 1."""
        P = np.zeros((self.M, self.n_folders))
        P[np.arange(self.M), self.assignment] = 1.0
        return P


def folder_sizes(M: int, n_folders: int) -> list[int]:
    """Sizes of M' balanced folders, larger first; the largest is ceil(M/M')."""
    if not 1 <= n_folders <= M:
        raise PlanError(
            "Folder count must lie in [1, M]",
            details={"M": M, "folders": n_folders},
        )
    base, extra = divmod(M, n_folders)
    return [base + 1] * extra + [base] * (n_folders - extra)


def random_plan(M: int, n_folders: int, seed: int = 0) -> SuperpositionPlan:
    """Uniformly random partition into folders whose sizes differ by at most 1."""
    order = rng_stream(seed, PLAN_STREAM).permutation(M)
    bounds = np.cumsum([0] + folder_sizes(M, n_folders))
    folders = tuple(
        tuple(int(m) for m in order[a:b]) for a, b in zip(bounds[:-1], bounds[1:])
    )
    return SuperpositionPlan(folders, M)


def diversity_plan(
    data: Sequence[EventSequence],
    n_folders: int,
    seed: int = 0,
    estimates: np.ndarray | None = None,
    C: int | None = None,
) -> tuple[SuperpositionPlan, list[EventSequence]]:
    """
    Diversity-driven superposition.

    Folders are grown one source at a time. Before every pick, the sampling
    weight of each remaining source m is multiplied by
    exp(-⟨μ̂^m, μ̂^folder⟩), so sources whose exogenous estimates overlap the
    folder's are unlikely to join it. The weights carry over between
    folders; picked sources drop to zero. The folder estimate is the sum of
    its members' estimates.

    Args:
        data: One sequence per agent, agent ids 0..M-1.
        n_folders: M'.
        seed: Seed of the sampling stream.
        estimates: C x M exogenous estimates, defaulting to N_c^m(T) / T.
        C: Entity count, required when `estimates` is omitted.

    Returns:
        The plan and the merged folder sequences.
    """
    data = _by_agent(data)
    M = len(data)
    sizes = folder_sizes(M, n_folders)
    if estimates is None:
        if C is None:
            raise PlanError("Entity count C is required to estimate intensities")
        estimates = exogenous_estimates(data, C)
    estimates = np.asarray(estimates, dtype=float)
    if estimates.ndim != 2 or estimates.shape[1] != M:
        raise PlanError(
            "Estimates must have one column per agent",
            details={"shape": list(estimates.shape), "M": M},
        )

    if n_folders == M:
        plan = SuperpositionPlan.identity(M)
        return plan, apply_plan(data, plan)

    rng = rng_stream(seed, PLAN_STREAM)
    log_p = np.zeros(M)
    folders = []
    for size in sizes:
        first = int(rng.choice(M, p=special.softmax(log_p)))
        log_p[first] = -np.inf
        members = [first]
        folder_mu = estimates[:, first].copy()
        for _ in range(size - 1):
            log_p = diversity_weights(log_p, estimates, folder_mu)
            pick = int(rng.choice(M, p=special.softmax(log_p)))
            log_p[pick] = -np.inf
            members.append(pick)
            folder_mu += estimates[:, pick]
        folders.append(tuple(members))

    plan = SuperpositionPlan(tuple(folders), M)
    logger.info(f"Diversity plan: M={M} M'={plan.n_folders} K={plan.K}")
    return plan, apply_plan(data, plan)


def diversity_weights(
    log_p: np.ndarray, estimates: np.ndarray, folder_mu: np.ndarray
) -> np.ndarray:
    """
    log p_m - ⟨μ̂^m, μ̂^folder⟩.

    The softmax of the result is the distribution of the next pick.
    """
    return log_p - estimates.T @ folder_mu


def apply_plan(
    data: Sequence[EventSequence], plan: SuperpositionPlan
) -> list[EventSequence]:
    """Merge every folder into one sequence labelled with the folder index."""
    data = _by_agent(data)
    if len(data) != plan.M:
        raise PlanError(
            "Plan and dataset disagree on the agent count",
            details={"plan_M": plan.M, "data_M": len(data)},
        )
    return [
        merge_sequences([data[m] for m in folder], agent_id=j)
        for j, folder in enumerate(plan.folders)
    ]


def superposed_params(params: ModelParams, plan: SuperpositionPlan) -> ModelParams:
    """Ground truth of the superposed model: U' = U·P, A unchanged."""
    if params.M != plan.M:
        raise PlanError(
            "Plan and parameters disagree on the agent count",
            details={"plan_M": plan.M, "params_M": params.M},
        )
    return ModelParams(params.U @ plan.matrix(), params.A.copy(), params.basis)


def plan_matrix(plan: SuperpositionPlan) -> np.ndarray:
    return plan.matrix()


def folder_count(M: int, K: int) -> int:
    """Smallest M' whose balanced folders hold at most K agents."""
    if K < 1:
        raise PlanError("K must be at least 1", details={"K": K})
    return max(1, math.ceil(M / K))


def _by_agent(data: Sequence[EventSequence]) -> list[EventSequence]:
    ordered = sorted(data, key=lambda s: s.agent_id)
    if [s.agent_id for s in ordered] != list(range(len(ordered))):
        raise PlanError("Agent ids must be exactly 0..M-1")
    return ordered
