"""
Domain types of the multi-agent Hawkes model.

- Event / EventSequence: marked events (time, entity) of one agent observed on
  [0, T].
- ModelParams: exogenous intensities U (C x M), endogenous impact tensor
  A (C x C x L) and the kernel basis. The flat parameter vector is
  θ = [vec(U); vec(A)] with U row-major and A ordered (c, c', l).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from apps.hawkes.exceptions import DimensionError, HawkesValidationError
from apps.hawkes.kernels import KernelBasis


class Event(NamedTuple):
    time: float
    entity: int


@dataclass(frozen=True, eq=False)
class EventSequence:
    """
    Time-ordered events of a single agent.

    Times are nondecreasing and lie in [0, horizon]. Simultaneous events are
    allowed only for distinct entities.
    """

    agent_id: int
    times: np.ndarray
    entities: np.ndarray
    horizon: float

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float).reshape(-1)
        entities = np.asarray(self.entities, dtype=np.int64).reshape(-1)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "entities", entities)
        object.__setattr__(self, "horizon", float(self.horizon))

        details = {"agent": int(self.agent_id)}
        if not self.horizon > 0:
            raise HawkesValidationError("Horizon T must be positive", details=details)
        if times.shape != entities.shape:
            raise DimensionError("times and entities differ in length", details)
        if times.size == 0:
            return
        if np.any(times < 0) or np.any(times > self.horizon):
            raise HawkesValidationError(
                "Event times must lie in [0, T]",
                details={**details, "T": self.horizon},
            )
        if np.any(entities < 0):
            raise DimensionError("Negative entity index", details=details)
        if np.any(np.diff(times) < 0):
            raise HawkesValidationError(
                "Event times must be nondecreasing", details=details
            )
        order = np.lexsort((entities, times))
        same = (np.diff(times[order]) == 0) & (np.diff(entities[order]) == 0)
        if np.any(same):
            raise HawkesValidationError(
                "Simultaneous events of the same entity", details=details
            )

    @classmethod
    def from_events(
        cls, agent_id: int, events: Iterable[tuple[float, int]], horizon: float
    ) -> EventSequence:
        """Build a sequence from unordered (time, entity) pairs."""
        pairs = sorted((float(t), int(c)) for t, c in events)
        times = np.array([t for t, _ in pairs], dtype=float)
        entities = np.array([c for _, c in pairs], dtype=np.int64)
        return cls(agent_id, times, entities, horizon)

    @classmethod
    def empty(cls, agent_id: int, horizon: float) -> EventSequence:
        return cls(agent_id, np.empty(0), np.empty(0, dtype=np.int64), horizon)

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def events(self) -> list[Event]:
        return [Event(float(t), int(c)) for t, c in zip(self.times, self.entities)]

    def check_entities(self, C: int) -> None:
        if len(self) and int(self.entities.max()) >= C:
            raise DimensionError(
                f"Entity index {int(self.entities.max())} outside [0, {C})",
                details={"agent": int(self.agent_id), "C": C},
            )

    def counts(self, C: int) -> np.ndarray:
        """N_c(T) for every entity."""
        return np.bincount(self.entities, minlength=C)[:C].astype(float)

    def counting(self, t: float) -> int:
        """N(t): number of events with time <= t."""
        return int(np.searchsorted(self.times, t, side="right"))

    def history_before(self, t: float) -> EventSequence:
        """Prefix of events strictly before t."""
        k = int(np.searchsorted(self.times, t, side="left"))
        return EventSequence(
            self.agent_id, self.times[:k], self.entities[:k], self.horizon
        )

    def relabel(self, agent_id: int) -> EventSequence:
        return EventSequence(agent_id, self.times, self.entities, self.horizon)

    def same_events(self, other: EventSequence) -> bool:
        return (
            np.array_equal(self.times, other.times)
            and np.array_equal(self.entities, other.entities)
            and self.horizon == other.horizon
        )


@dataclass(eq=False)
class ModelParams:
    """
    Parameters θ of HP(U, A).

    Attributes:
        U: Exogenous intensities μ_c^m, shape (C, M).
        A: Endogenous coefficients a_cc'l, shape (C, C, L).
        basis: Decay kernels g_l.
    """

    U: np.ndarray
    A: np.ndarray
    basis: KernelBasis = field(default_factory=KernelBasis.exponential)

    def __post_init__(self) -> None:
        self.U = np.array(self.U, dtype=float, ndmin=2)
        self.A = np.array(self.A, dtype=float)
        if self.A.ndim == 2:
            self.A = self.A[:, :, None]
        C = self.U.shape[0]
        if self.A.shape != (C, C, self.basis.L):
            raise DimensionError(
                "A must have shape (C, C, L)",
                details={"U": list(self.U.shape), "A": list(self.A.shape)},
            )
        if np.any(self.U < 0) or np.any(self.A < 0):
            raise HawkesValidationError("U and A must be nonnegative")

    @classmethod
    def zeros(cls, C: int, M: int, basis: KernelBasis | None = None) -> ModelParams:
        basis = basis or KernelBasis.exponential()
        return cls(np.zeros((C, M)), np.zeros((C, C, basis.L)), basis)

    @classmethod
    def from_theta(
        cls, theta: np.ndarray, C: int, M: int, basis: KernelBasis
    ) -> ModelParams:
        theta = np.asarray(theta, dtype=float)
        if theta.size != C * (M + C * basis.L):
            raise DimensionError(
                "θ length does not match C(M + CL)",
                details={"size": int(theta.size), "C": C, "M": M, "L": basis.L},
            )
        U = theta[: C * M].reshape(C, M)
        A = theta[C * M :].reshape(C, C, basis.L)
        return cls(U.copy(), A.copy(), basis)

    @property
    def C(self) -> int:
        return int(self.U.shape[0])

    @property
    def M(self) -> int:
        return int(self.U.shape[1])

    @property
    def L(self) -> int:
        return self.basis.L

    @property
    def D(self) -> int:
        return self.C * (self.M + self.C * self.L)

    @property
    def theta(self) -> np.ndarray:
        return np.concatenate([self.U.ravel(), self.A.ravel()])

    def u_index(self, entity: int, agent: int) -> int:
        return entity * self.M + agent

    def a_index(self, target: int, source: int, kernel: int) -> int:
        return self.C * self.M + (target * self.C + source) * self.L + kernel

    def check_indices(self, agent: int, entity: int) -> None:
        if not 0 <= agent < self.M or not 0 <= entity < self.C:
            raise DimensionError(
                "Agent or entity index out of range",
                details={"agent": agent, "entity": entity, "C": self.C, "M": self.M},
            )

    def copy(self) -> ModelParams:
        return ModelParams(self.U.copy(), self.A.copy(), self.basis)

    def with_U(self, U: np.ndarray) -> ModelParams:
        return ModelParams(np.array(U, dtype=float), self.A.copy(), self.basis)

    def with_A(self, A: np.ndarray) -> ModelParams:
        return ModelParams(self.U.copy(), np.array(A, dtype=float), self.basis)
