"""
Fit reports and relative estimation errors.

A FitReport holds one record per epoch: the NLL on a fixed monitor
subsample (training events unless OptConfig.holdout keeps them out of
every batch), the relative errors against a ground truth when one is known,
and the wall-clock seconds spent in the epoch.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
import pandas as pd

from apps.hawkes.exceptions import DimensionError, HawkesValidationError
from apps.hawkes.types import ModelParams

REPORT_COLUMNS = [
    "epoch",
    "round",
    "stage",
    "nll",
    "err_U",
    "err_A",
    "err_theta",
    "seconds",
]


def relative_errors(
    est: ModelParams, truth: ModelParams
) -> tuple[float, float, float]:
    """
    (‖U* - Û‖_F / ‖U*‖_F, ‖A* - Â‖_F / ‖A*‖_F, ‖θ* - θ̂‖_2 / ‖θ*‖_2).

    Raises:
        DimensionError: If shapes differ.
        HawkesValidationError: If a ground-truth block has zero norm.
    """
    if est.U.shape != truth.U.shape or est.A.shape != truth.A.shape:
        raise DimensionError(
            "Estimate and truth shapes differ",
            details={
                "est": [list(est.U.shape), list(est.A.shape)],
                "truth": [list(truth.U.shape), list(truth.A.shape)],
            },
        )
    norms = (
        np.linalg.norm(truth.U),
        np.linalg.norm(truth.A),
        np.linalg.norm(truth.theta),
    )
    if min(norms) == 0:
        raise HawkesValidationError(
            "Relative error undefined for a zero-norm ground truth",
            details={"norm_U": norms[0], "norm_A": norms[1]},
        )
    return (
        float(np.linalg.norm(truth.U - est.U) / norms[0]),
        float(np.linalg.norm(truth.A - est.A) / norms[1]),
        float(np.linalg.norm(truth.theta - est.theta) / norms[2]),
    )


@dataclass(frozen=True)
class ErrorTracker:
    """
    Ground truth to score epochs against.

    `agents` restricts the U comparison to the first columns of the estimate,
    for fits that append extra agents (data augmentation).
    """

    truth: ModelParams
    agents: int | None = None

    def __call__(self, est: ModelParams) -> tuple[float, float, float]:
        if self.agents is not None:
            est = ModelParams(est.U[:, : self.agents], est.A, est.basis)
        return relative_errors(est, self.truth)


@dataclass
class EpochRecord:
    epoch: int
    nll: float
    err_U: float = math.nan
    err_A: float = math.nan
    err_theta: float = math.nan
    seconds: float = 0.0
    round: int = 0
    stage: str = "fit"


@dataclass
class FitReport:
    """Per-epoch traces, the final parameters and the configuration echo."""

    records: list[EpochRecord]
    params: ModelParams
    config: dict[str, Any] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def nll(self) -> np.ndarray:
        return np.array([r.nll for r in self.records])

    @property
    def err_U(self) -> np.ndarray:
        return np.array([r.err_U for r in self.records])

    @property
    def err_A(self) -> np.ndarray:
        return np.array([r.err_A for r in self.records])

    @property
    def seconds(self) -> np.ndarray:
        return np.array([r.seconds for r in self.records])

    @property
    def final(self) -> EpochRecord | None:
        return self.records[-1] if self.records else None

    def epochs_to_reach(self, err_A: float) -> int | None:
        """First epoch whose err_A is at or below the level, if any."""
        for record in self.records:
            if record.err_A <= err_A:
                return record.epoch
        return None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [asdict(r) for r in self.records], columns=REPORT_COLUMNS
        )

    @classmethod
    def concatenate(
        cls, parts: list[FitReport], params: ModelParams, config: dict[str, Any]
    ) -> FitReport:
        """Join stage reports, renumbering epochs consecutively."""
        records = []
        for part in parts:
            for record in part.records:
                records.append(
                    EpochRecord(
                        epoch=len(records) + 1,
                        nll=record.nll,
                        err_U=record.err_U,
                        err_A=record.err_A,
                        err_theta=record.err_theta,
                        seconds=record.seconds,
                        round=record.round,
                        stage=record.stage,
                    )
                )
        return cls(records, params, config)
