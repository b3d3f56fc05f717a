"""
Event-level stochastic projected gradient descent (StocOpt) and its
full-gradient counterpart (BatchOpt).

Each step draws a batch of events, evaluates their features with at most J
history events, and applies

    θ ← (θ - η Σ_i ∇_{λ0} f_i(θ))₊,   ∇_{λ0} f_i = X_i - x_i / max(x_iᵀθ, λ0).
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, replace
from typing import Any, Callable, Sequence

import numpy as np
from django.conf import settings
from scipy import sparse

from apps.hawkes.exceptions import DimensionError
from apps.hawkes.kernels import KernelBasis
from apps.hawkes.random import rng_stream
from apps.hawkes.services import EventFeatures, FeatureCache
from apps.hawkes.types import EventSequence, ModelParams
from apps.optimization.exceptions import EmptyDataError, OptConfigError
from apps.optimization.services.report import EpochRecord, ErrorTracker, FitReport

logger = logging.getLogger(__name__)

SHUFFLE_STREAM = 0
MONITOR_STREAM = 1
INIT_STREAM = 2


@dataclass(frozen=True)
class OptConfig:
    """
    Optimizer settings.

    Attributes:
        batch_size: Events per step (B).
        history_cap: Most recent history events per feature (J); None keeps all.
        lambda0: Intensity offset of the clamped gradient.
        learning_rate: Step size η.
        decay: Scale η by 1/√epoch.
        epochs: Passes over the events.
        tol: Early stop when the relative parameter change of an epoch is
            below this value.
        seed: Seed of the shuffling stream.
        holdout: Fraction of events held out of every batch and used only for
            the per-epoch NLL. With 0 the NLL is taken on a fixed training
            subsample of HAWKES_MONITOR_EVENTS events.
    """

    batch_size: int = 64
    history_cap: int | None = 50
    lambda0: float = 1e-3
    learning_rate: float = 0.01
    decay: bool = False
    epochs: int = 50
    tol: float = 1e-4
    seed: int = 0
    holdout: float = 0.0

    def __post_init__(self) -> None:
        problems = {}
        if self.batch_size < 1:
            problems["batch_size"] = "must be at least 1"
        if self.history_cap is not None and self.history_cap < 1:
            problems["history_cap"] = "must be at least 1"
        if not self.lambda0 > 0:
            problems["lambda0"] = "must be positive"
        if self.learning_rate < 0:
            problems["learning_rate"] = "must be nonnegative"
        if self.epochs < 1:
            problems["epochs"] = "must be at least 1"
        if self.tol < 0:
            problems["tol"] = "must be nonnegative"
        if not 0.0 <= self.holdout < 1.0:
            problems["holdout"] = "must be in [0, 1)"
        if problems:
            raise OptConfigError(details=problems)

    @classmethod
    def from_settings(cls, **overrides: Any) -> OptConfig:
        """Settings defaults, then any non-None overrides."""
        base = dict(getattr(settings, "HAWKES_OPT", {}))
        base.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**base)

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def grad_event(
    params: ModelParams, features: EventFeatures, lambda0: float
) -> sparse.csr_array:
    """X - x / max(xᵀθ, λ0), supported on support(x) ∪ support(X)."""
    lam = features.point_value(params.theta)
    return features.X - features.x * (1.0 / max(lam, lambda0))


def project_nonneg(theta: np.ndarray) -> np.ndarray:
    """Entrywise max(θ, 0)."""
    return np.maximum(np.asarray(theta, dtype=float), 0.0)


def initial_params(
    data: Sequence[EventSequence],
    C: int,
    M: int,
    basis: KernelBasis,
    seed: int = 0,
) -> ModelParams:
    """
    U from event counts, U[c, m] = N_c^m(T) / T; A uniform on [0, 0.1 / C].
    """
    U = np.zeros((C, M))
    for seq in data:
        if seq.agent_id >= M:
            raise DimensionError(
                "Sequence agent outside [0, M)",
                details={"agent": int(seq.agent_id), "M": M},
            )
        U[:, seq.agent_id] += seq.counts(C) / seq.horizon
    A = rng_stream(seed, INIT_STREAM).uniform(0.0, 0.1 / C, size=(C, C, basis.L))
    return ModelParams(U, A, basis)


def split_monitor(n: int, cfg: OptConfig) -> tuple[np.ndarray, np.ndarray]:
    """
    Training rows and monitor rows of n events.

    A held-out monitor keeps at least one event on each side; otherwise the
    monitor is a subsample of the training rows.
    """
    rng = rng_stream(cfg.seed, MONITOR_STREAM)
    if cfg.holdout > 0 and n > 1:
        size = min(max(1, round(cfg.holdout * n)), n - 1)
        held = np.zeros(n, dtype=bool)
        held[rng.choice(n, size, replace=False)] = True
        return np.flatnonzero(~held), np.flatnonzero(held)

    rows = np.arange(n)
    size = min(n, int(getattr(settings, "HAWKES_MONITOR_EVENTS", 2000)))
    if size == n:
        return rows, rows
    return rows, np.sort(rng.choice(n, size, replace=False))


def _relative_change(before: np.ndarray, after: np.ndarray) -> float:
    scale = np.linalg.norm(before)
    return float(np.linalg.norm(after - before) / (scale if scale > 0 else 1.0))


def _run(
    data: Sequence[EventSequence],
    cfg: OptConfig,
    init: ModelParams,
    batches: Callable[[np.random.Generator, np.ndarray], list[np.ndarray]],
    freeze_U: bool,
    truth: ErrorTracker | None,
    stage: str,
    round_index: int,
) -> FitReport:
    if not data:
        raise EmptyDataError("No sequences to fit")
    for seq in data:
        seq.check_entities(init.C)
    cache = FeatureCache(data, init.basis, cfg.history_cap)
    if len(cache) == 0:
        raise EmptyDataError()
    cache.check_params(init)

    params = init.copy()
    rng = rng_stream(cfg.seed, SHUFFLE_STREAM)
    train, monitor = split_monitor(len(cache), cfg)
    records = []

    for epoch in range(1, cfg.epochs + 1):
        started = time.perf_counter()
        before = params.theta
        lr = cfg.learning_rate / math.sqrt(epoch) if cfg.decay else cfg.learning_rate
        for rows in batches(rng, train):
            grad_U, grad_A = cache.gradient(params, cfg.lambda0, rows)
            if not freeze_U:
                np.maximum(params.U - lr * grad_U, 0.0, out=params.U)
            np.maximum(params.A - lr * grad_A, 0.0, out=params.A)
        seconds = time.perf_counter() - started

        nll = float(np.sum(cache.nll(params, cfg.lambda0, monitor)))
        errors = truth(params) if truth is not None else (math.nan,) * 3
        records.append(
            EpochRecord(
                epoch=epoch,
                nll=nll,
                err_U=errors[0],
                err_A=errors[1],
                err_theta=errors[2],
                seconds=seconds,
                round=round_index,
                stage=stage,
            )
        )
        logger.info(
            f"[{stage}] epoch {epoch}: nll={nll:.6g} err_U={errors[0]:.4g} "
            f"err_A={errors[1]:.4g} ({seconds:.3f}s)"
        )
        change = _relative_change(before, params.theta)
        if change < cfg.tol:
            logger.info(
                f"[{stage}] converged after {epoch} epochs (change={change:.3g})"
            )
            break

    return FitReport(records, params, {"stage": stage, **cfg.to_dict()})


def stoc_fit(
    data: Sequence[EventSequence],
    cfg: OptConfig,
    init: ModelParams,
    freeze_U: bool = False,
    truth: ErrorTracker | None = None,
    stage: str = "stoc",
    round_index: int = 0,
) -> FitReport:
    """
    Stochastic projected gradient descent over events.

    Every epoch shuffles all event indices once and walks them in batches
    of B, so each event is used exactly once per epoch. With freeze_U the
    exogenous block keeps its initial value.
    """
    n_events = sum(len(s) for s in data)
    if cfg.batch_size > n_events > 0:
        logger.warning(
            f"Batch size {cfg.batch_size} exceeds the {n_events} events; clamping"
        )
        cfg = replace(cfg, batch_size=n_events)

    def batches(rng: np.random.Generator, rows: np.ndarray) -> list[np.ndarray]:
        order = rows[rng.permutation(rows.size)]
        step = cfg.batch_size
        return [order[i : i + step] for i in range(0, order.size, step)]

    return _run(data, cfg, init, batches, freeze_U, truth, stage, round_index)


def batch_fit(
    data: Sequence[EventSequence],
    cfg: OptConfig,
    init: ModelParams,
    truth: ErrorTracker | None = None,
    stage: str = "batch",
    round_index: int = 0,
) -> FitReport:
    """
    Full-gradient projected descent: one step per epoch over every event,
    with the complete history of each event.
    """
    cfg = replace(cfg, history_cap=None)

    def batches(rng: np.random.Generator, rows: np.ndarray) -> list[np.ndarray]:
        return [rows]

    return _run(data, cfg, init, batches, False, truth, stage, round_index)
