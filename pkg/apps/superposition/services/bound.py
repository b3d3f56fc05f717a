"""
Risk-bound tightening condition of a K-nonaugmented superposition.

Learning HP(U', A) from M' superposed sequences has a tighter risk bound
than learning HP(U, A) from the M originals when

    U0' <= (A0 + U0) · [(M + CL) log I + log(2/δ)]
                     / [(M' + CL) log I + log(2/δ)] - A0

with natural logarithms. The right-hand side is evaluated as
U0 + (A0 + U0)(M - M') log I / [(M' + CL) log I + log(2/δ)], which is the
same quantity and is exactly U0 when M' = M.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from apps.hawkes.exceptions import HawkesValidationError
from apps.hawkes.types import ModelParams
from apps.superposition.services.plans import SuperpositionPlan, superposed_params

SAFETY_FACTOR = 1.1


@dataclass(frozen=True)
class RiskBoundInputs:
    """
    Attributes:
        U0: Bound on ‖U‖_F².
        A0: Bound on ‖A‖_F².
        U0_prime: Bound on ‖U'‖_F² of the superposed model.
        M: Source agents.
        M_prime: Folders.
        C: Entities.
        L: Kernels.
        n_events: Total event count I_Σ.
        delta: Confidence level in (0, 0.5).
    """

    U0: float
    A0: float
    U0_prime: float
    M: int
    M_prime: int
    C: int
    L: int
    n_events: int
    delta: float

    def __post_init__(self) -> None:
        problems = {}
        for name in ("U0", "A0", "U0_prime", "M", "M_prime", "C", "L"):
            if not getattr(self, name) > 0:
                problems[name] = "must be positive"
        if self.n_events < 2:
            problems["n_events"] = "must be at least 2"
        if not 0 < self.delta < 0.5:
            problems["delta"] = "must lie in (0, 0.5)"
        if problems:
            raise HawkesValidationError(
                "Invalid risk-bound inputs", details=problems
            )


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    lhs: float
    rhs: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def check_tightening(inputs: RiskBoundInputs) -> BoundCheck:
    """Evaluate both sides of the tightening condition; holds iff U0' <= rhs."""
    log_events = math.log(inputs.n_events)
    log_conf = math.log(2.0 / inputs.delta)
    CL = inputs.C * inputs.L
    denominator = (inputs.M_prime + CL) * log_events + log_conf
    gain = (inputs.M - inputs.M_prime) * log_events / denominator
    rhs = inputs.U0 + (inputs.A0 + inputs.U0) * gain
    return BoundCheck(holds=inputs.U0_prime <= rhs, lhs=inputs.U0_prime, rhs=rhs)


def bound_inputs_from_estimates(
    params: ModelParams,
    plan: SuperpositionPlan,
    n_events: int,
    delta: float = 0.1,
    U0: float | None = None,
    A0: float | None = None,
) -> RiskBoundInputs:
    """
    Condition inputs from current estimates.

    Missing U0 and A0 default to the squared Frobenius norms of the estimates
    times 1.1; U0' is derived the same way from U·P.
    """
    superposed = superposed_params(params, plan)
    return RiskBoundInputs(
        U0=U0 if U0 is not None else SAFETY_FACTOR * _squared_norm(params.U),
        A0=A0 if A0 is not None else SAFETY_FACTOR * _squared_norm(params.A),
        U0_prime=SAFETY_FACTOR * _squared_norm(superposed.U),
        M=params.M,
        M_prime=plan.n_folders,
        C=params.C,
        L=params.L,
        n_events=int(n_events),
        delta=delta,
    )


def _squared_norm(arr: np.ndarray) -> float:
    return float(np.sum(np.square(arr)))
