"""
Learning strategies for multi-agent Hawkes processes.

- BatchOpt: full-gradient projected descent.
- StocOpt: event-level stochastic projected descent.
- StocOptAugment: diversity-superposed sequences appended to the data as
  extra agents, then StocOpt.
- StocOptSuperpose: alternating superposed / original fits (superposed_fit).
- SingleHP: every agent merged into one sequence, then StocOpt.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import StrEnum
from typing import Any, Sequence

import numpy as np
from django.conf import settings

from apps.hawkes.kernels import KernelBasis
from apps.hawkes.types import EventSequence, ModelParams
from apps.optimization.services import (
    ErrorTracker,
    FitReport,
    OptConfig,
    batch_fit,
    initial_params,
    relative_errors,
    stoc_fit,
)
from apps.pipeline.exceptions import PipelineConfigError, UnknownStrategyError
from apps.superposition.services import (
    SuperpositionPlan,
    apply_plan,
    diversity_plan,
    exogenous_estimates,
    folder_count,
    superposed_params,
)

logger = logging.getLogger(__name__)

__all__ = [
    "PipelineConfig",
    "Strategy",
    "relative_errors",
    "run_strategy",
    "superposed_fit",
]


class Strategy(StrEnum):
    BATCH = "BatchOpt"
    STOC = "StocOpt"
    AUGMENT = "StocOptAugment"
    SUPERPOSE = "StocOptSuperpose"
    SINGLE = "SingleHP"

    @classmethod
    def parse(cls, name: str | Strategy) -> Strategy:
        """Accept a strategy name or its short CLI alias."""
        if isinstance(name, cls):
            return name
        key = str(name)
        if key in _ALIASES:
            return _ALIASES[key]
        try:
            return cls(key)
        except ValueError:
            raise UnknownStrategyError(
                f"Unknown strategy: {key}",
                details={"allowed": [s.value for s in cls] + sorted(_ALIASES)},
            ) from None


_ALIASES = {
    "batch": Strategy.BATCH,
    "stoc": Strategy.STOC,
    "augment": Strategy.AUGMENT,
    "superpose": Strategy.SUPERPOSE,
    "single": Strategy.SINGLE,
}


@dataclass(frozen=True, eq=False)
class PipelineConfig:
    """
    Configuration of one learning run.

    Attributes:
        opt: Optimizer settings shared by every stage.
        strategy: Learning strategy.
        K: Largest folder size of a superposition plan.
        n_folders: Explicit folder count M'; overrides K when set.
        outer_rounds: Rounds of superposed_fit.
        round_tol: superposed_fit stops when θ changes less than this
            (relative) between rounds.
        stage_epochs: Epochs per stage of every round.
        truth: Ground truth for error curves.
        C: Entity count; taken from truth or the data when omitted.
        basis: Kernel basis of the learned model.
    """

    opt: OptConfig = field(default_factory=OptConfig)
    strategy: Strategy = Strategy.STOC
    K: int = 2
    n_folders: int | None = None
    outer_rounds: int = 5
    round_tol: float = 1e-3
    stage_epochs: int = 1
    truth: ModelParams | None = None
    C: int | None = None
    basis: KernelBasis = field(default_factory=KernelBasis.exponential)

    def __post_init__(self) -> None:
        object.__setattr__(self, "strategy", Strategy.parse(self.strategy))
        problems = {}
        if self.outer_rounds < 1:
            problems["outer_rounds"] = "must be at least 1"
        if self.stage_epochs < 1:
            problems["stage_epochs"] = "must be at least 1"
        if self.K < 1:
            problems["K"] = "must be at least 1"
        if self.n_folders is not None and self.n_folders < 1:
            problems["n_folders"] = "must be at least 1"
        if self.round_tol < 0:
            problems["round_tol"] = "must be nonnegative"
        if problems:
            raise PipelineConfigError(details=problems)

    @classmethod
    def from_settings(
        cls, opt: OptConfig | None = None, **overrides: Any
    ) -> PipelineConfig:
        """Settings defaults, then any non-None overrides."""
        base = dict(getattr(settings, "HAWKES_PIPELINE", {}))
        base.update({k: v for k, v in overrides.items() if v is not None})
        base.setdefault("basis", KernelBasis.from_settings())
        return cls(opt=opt or OptConfig.from_settings(), **base)

    def folders(self, M: int) -> int:
        """M' for a dataset of M agents."""
        n = self.n_folders if self.n_folders is not None else folder_count(M, self.K)
        if n > M:
            raise PipelineConfigError(
                "More folders than agents", details={"folders": n, "M": M}
            )
        return n

    def to_dict(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy.value,
            "K": self.K,
            "n_folders": self.n_folders,
            "outer_rounds": self.outer_rounds,
            "round_tol": self.round_tol,
            "stage_epochs": self.stage_epochs,
            "opt": self.opt.to_dict(),
            "basis": self.basis.to_dict(),
        }


def _entity_count(data: Sequence[EventSequence], cfg: PipelineConfig) -> int:
    if cfg.C is not None:
        return cfg.C
    if cfg.truth is not None:
        return cfg.truth.C
    seen = [int(s.entities.max()) for s in data if len(s)]
    return max(seen) + 1 if seen else 1


def _tracker(cfg: PipelineConfig, agents: int | None = None) -> ErrorTracker | None:
    return ErrorTracker(cfg.truth, agents) if cfg.truth is not None else None


def _relative_change(before: np.ndarray, after: np.ndarray) -> float:
    scale = np.linalg.norm(before)
    return float(np.linalg.norm(after - before) / (scale if scale > 0 else 1.0))


def superposed_fit(
    data: Sequence[EventSequence], cfg: PipelineConfig, init: ModelParams
) -> FitReport:
    """
    Alternate between superposed and original sequences.

    Every round (a) builds M' folders with the diversity-driven plan, from
    count estimates in the first round and from the learned U afterwards,
    (b) fits HP(U', A) on the folders starting from U' = U·P, and (c) fits
    HP(U, A) on the original sequences starting from the A of (b). Round r
    shuffles with seed opt.seed + r. With M' = M stage (b) is skipped.
    """
    M, C = len(data), init.C
    n_folders = cfg.folders(M)
    params = init.copy()
    parts: list[FitReport] = []
    estimates = None

    for r in range(cfg.outer_rounds):
        before = params.theta
        stage_opt = replace(cfg.opt, epochs=cfg.stage_epochs, seed=cfg.opt.seed + r)

        if n_folders < M:
            plan, merged = diversity_plan(
                data, n_folders, seed=cfg.opt.seed + r, estimates=estimates, C=C
            )
            tracker = (
                ErrorTracker(superposed_params(cfg.truth, plan))
                if cfg.truth is not None
                else None
            )
            stage = stoc_fit(
                merged,
                stage_opt,
                superposed_params(params, plan),
                truth=tracker,
                stage="superposed",
                round_index=r,
            )
            params = params.with_A(stage.params.A)
            parts.append(stage)

        stage = stoc_fit(
            data,
            stage_opt,
            params,
            truth=_tracker(cfg),
            stage="original",
            round_index=r,
        )
        params = stage.params
        parts.append(stage)
        estimates = params.U

        change = _relative_change(before, params.theta)
        logger.info(f"Round {r}: M'={n_folders} change={change:.4g}")
        if change < cfg.round_tol:
            break

    return FitReport.concatenate(parts, params, cfg.to_dict())


def _augment(
    data: Sequence[EventSequence], cfg: PipelineConfig, init: ModelParams
) -> FitReport:
    M, C = len(data), init.C
    _, merged = diversity_plan(data, cfg.folders(M), seed=cfg.opt.seed, C=C)
    extra = [seq.relabel(M + j) for j, seq in enumerate(merged)]
    U = np.hstack([init.U, exogenous_estimates(merged, C)])
    report = stoc_fit(
        list(data) + extra,
        cfg.opt,
        init.with_U(U),
        truth=_tracker(cfg, agents=M),
        stage="augmented",
    )
    report.params = report.params.with_U(report.params.U[:, :M])
    return report


def _single(
    data: Sequence[EventSequence], cfg: PipelineConfig, init: ModelParams
) -> FitReport:
    M = len(data)
    plan = SuperpositionPlan((tuple(range(M)),), M)
    merged = apply_plan(data, plan)
    tracker = (
        ErrorTracker(superposed_params(cfg.truth, plan))
        if cfg.truth is not None
        else None
    )
    return stoc_fit(
        merged, cfg.opt, superposed_params(init, plan), truth=tracker, stage="single"
    )


def run_strategy(
    data: Sequence[EventSequence],
    cfg: PipelineConfig,
    init: ModelParams | None = None,
) -> FitReport:
    """
    Fit the dataset with the configured strategy.

    Args:
        data: One sequence per agent, agent ids 0..M-1.
        cfg: Pipeline configuration.
        init: Starting point; count-based U and random A when omitted.

    Returns:
        The FitReport, with the same schema for every strategy.
    """
    if init is None:
        init = initial_params(
            data, _entity_count(data, cfg), len(data), cfg.basis, cfg.opt.seed
        )
    logger.info(
        f"Running {cfg.strategy.value} on {len(data)} sequences "
        f"({sum(len(s) for s in data)} events)"
    )
    match cfg.strategy:
        case Strategy.BATCH:
            report = batch_fit(data, cfg.opt, init, truth=_tracker(cfg))
        case Strategy.STOC:
            report = stoc_fit(data, cfg.opt, init, truth=_tracker(cfg))
        case Strategy.AUGMENT:
            report = _augment(data, cfg, init)
        case Strategy.SUPERPOSE:
            report = superposed_fit(data, cfg, init)
        case Strategy.SINGLE:
            report = _single(data, cfg, init)
        case _:
            raise UnknownStrategyError(details={"strategy": str(cfg.strategy)})
    report.config = cfg.to_dict()
    return report
