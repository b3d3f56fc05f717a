"""
Event featurization for the linear parameterization λ = xᵀθ.

For the i-th event of agent m, the point feature x holds a 1 at U[c_i, m] and
the kernel values g_l(t_i - t_j) at A[c_i, c_j, l] for the (at most J) most
recent history events. The interval feature X integrates x_{c,m}(s) over
(t_{i-1}, t_i] for every entity c, so Xᵀθ is the compensator of that interval
and f_i(θ) = Xᵀθ - log(xᵀθ).

Features never depend on θ, so fits compute them once in a FeatureCache and
evaluate intensities, compensators and gradients for whole batches at a time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import sparse

from apps.hawkes.exceptions import DimensionError, EventIndexError
from apps.hawkes.kernels import KernelBasis
from apps.hawkes.types import EventSequence, ModelParams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HistoryWindow:
    """Kernel terms contributed by the capped history of one event."""

    entities: np.ndarray  # (k,)
    point: np.ndarray  # (k, L) g_l(t_i - t_j), zero for simultaneous events
    integral: np.ndarray  # (k, L) ∫_{t_{i-1}}^{t_i} g_l(s - t_j) ds
    interval: float  # t_i - t_{i-1}, with t_0 := 0


def history_window(
    sequence: EventSequence, i: int, J: int | None, basis: KernelBasis
) -> HistoryWindow:
    """
    Kernel terms of the i-th event (1-based) from its J most recent predecessors.

    Raises:
        EventIndexError: If i is outside [1, len(sequence)].
    """
    n = len(sequence)
    if not 1 <= i <= n:
        raise EventIndexError(
            f"Event index {i} outside [1, {n}]",
            details={"agent": int(sequence.agent_id)},
        )
    idx = i - 1
    t_i = sequence.times[idx]
    t_prev = sequence.times[idx - 1] if idx > 0 else 0.0
    start = 0 if J is None else max(0, idx - J)
    hist_times = sequence.times[start:idx]

    lags = t_i - hist_times
    point = basis.evaluate(lags)
    point[lags <= 0] = 0.0
    integral = basis.integrate(t_prev - hist_times, lags)
    return HistoryWindow(
        entities=sequence.entities[start:idx].copy(),
        point=point,
        integral=integral,
        interval=float(t_i - t_prev),
    )


@dataclass(frozen=True)
class EventFeatures:
    """
    Sparse features of one event, both of shape (1, D).

    Attributes:
        x: Point feature at (t_i, c_i).
        X: Interval-integrated feature over (t_{i-1}, t_i].
    """

    x: sparse.csr_array
    X: sparse.csr_array
    entity: int
    agent: int
    time: float
    interval: float

    def point_value(self, theta: np.ndarray) -> float:
        """xᵀθ, the intensity at the event."""
        return float((self.x @ theta)[0])

    def compensator_value(self, theta: np.ndarray) -> float:
        """Xᵀθ, the integrated intensity over the event's interval."""
        return float((self.X @ theta)[0])


def featurize(
    params: ModelParams, sequence: EventSequence, i: int, J: int | None
) -> EventFeatures:
    """
    Build (x, X) for the i-th event (1-based) of a sequence.

    Only the shape (C, M, L) and the kernel basis of `params` are used.
    """
    window = history_window(sequence, i, J, params.basis)
    m = int(sequence.agent_id)
    c_i = int(sequence.entities[i - 1])
    params.check_indices(m, c_i)
    C, L, D = params.C, params.L, params.D
    k = window.entities.size

    a_offsets = (window.entities[:, None] * L + np.arange(L)[None, :]).ravel()
    a_base = C * params.M

    x_idx = np.concatenate(
        [[params.u_index(c_i, m)], a_base + c_i * C * L + a_offsets]
    )
    x_val = np.concatenate([[1.0], window.point.ravel()])

    targets = np.arange(C)
    X_idx = np.concatenate(
        [
            targets * params.M + m,
            (a_base + targets[:, None] * C * L + a_offsets[None, :]).ravel(),
        ]
    )
    X_val = np.concatenate(
        [np.full(C, window.interval), np.tile(window.integral.ravel(), C)]
    )
    logger.debug(f"Featurized event {i} of agent {m} with {k} history events")
    return EventFeatures(
        x=_row_vector(x_idx, x_val, D),
        X=_row_vector(X_idx, X_val, D),
        entity=c_i,
        agent=m,
        time=float(sequence.times[i - 1]),
        interval=window.interval,
    )


def _row_vector(indices: np.ndarray, values: np.ndarray, size: int) -> sparse.csr_array:
    rows = np.zeros(indices.size, dtype=np.int64)
    return sparse.csr_array(
        (values, (rows, indices.astype(np.int64))), shape=(1, size)
    )


class FeatureCache:
    """
    Features of every event in a dataset, stacked and padded to the history cap.

    Row r describes one event: its agent, entity, interval length and up to
    `width` history entries (entity, point values, interval integrals). Padded
    entries carry zero kernel terms, so they never contribute.
    """

    def __init__(
        self, data: Sequence[EventSequence], basis: KernelBasis, J: int | None
    ):
        self.basis = basis
        self.J = J
        lengths = [len(s) for s in data]
        longest = max(lengths, default=0)
        width = max(longest - 1, 0) if J is None else min(J, max(longest - 1, 0))
        self.width = max(width, 1)

        agents, entities, intervals = [], [], []
        hist, point, integral, seq_index = [], [], [], []
        for pos, seq in enumerate(data):
            n = len(seq)
            if n == 0:
                continue
            t, c = seq.times, seq.entities
            prev = np.concatenate([[0.0], t[:-1]])
            h = np.zeros((n, self.width), dtype=np.int64)
            p = np.zeros((n, self.width, basis.L))
            q = np.zeros((n, self.width, basis.L))
            rows = np.arange(n)
            for k in range(1, min(self.width, n - 1) + 1):
                valid = rows[rows >= k]
                j = valid - k
                lag = t[valid] - t[j]
                h[valid, k - 1] = c[j]
                values = basis.evaluate(lag)
                values[lag <= 0] = 0.0
                p[valid, k - 1] = values
                q[valid, k - 1] = basis.integrate(prev[valid] - t[j], lag)
            agents.append(np.full(n, int(seq.agent_id), dtype=np.int64))
            entities.append(c)
            intervals.append(t - prev)
            hist.append(h)
            point.append(p)
            integral.append(q)
            seq_index.append(np.full(n, pos, dtype=np.int64))

        L = basis.L
        self.agent = np.concatenate(agents) if agents else np.zeros(0, np.int64)
        self.entity = np.concatenate(entities) if entities else np.zeros(0, np.int64)
        self.interval = np.concatenate(intervals) if intervals else np.zeros(0)
        self.history = (
            np.concatenate(hist) if hist else np.zeros((0, self.width), np.int64)
        )
        self.point = (
            np.concatenate(point) if point else np.zeros((0, self.width, L))
        )
        self.integral = (
            np.concatenate(integral) if integral else np.zeros((0, self.width, L))
        )
        self.sequence = (
            np.concatenate(seq_index) if seq_index else np.zeros(0, np.int64)
        )
        self.depth = (self.point.any(axis=2) | self.integral.any(axis=2)).sum(axis=1)

    def __len__(self) -> int:
        return int(self.agent.size)

    def check_params(self, params: ModelParams) -> None:
        if len(self) == 0:
            return
        if int(self.agent.max()) >= params.M or int(self.entity.max()) >= params.C:
            raise DimensionError(
                "Dataset indices exceed model dimensions",
                details={
                    "max_agent": int(self.agent.max()),
                    "max_entity": int(self.entity.max()),
                    "C": params.C,
                    "M": params.M,
                },
            )
        if params.basis != self.basis:
            raise DimensionError("Feature cache built for a different kernel basis")

    def _rows(self, rows: np.ndarray | None) -> np.ndarray:
        return np.arange(len(self)) if rows is None else np.asarray(rows, np.int64)

    def intensities(
        self, params: ModelParams, rows: np.ndarray | None = None
    ) -> np.ndarray:
        """xᵀθ for each selected event."""
        r = self._rows(rows)
        ent, hist = self.entity[r], self.history[r]
        endo = np.einsum("bkl,bkl->b", params.A[ent[:, None], hist], self.point[r])
        return params.U[ent, self.agent[r]] + endo

    def compensators(
        self, params: ModelParams, rows: np.ndarray | None = None
    ) -> np.ndarray:
        """Xᵀθ for each selected event."""
        r = self._rows(rows)
        mu_total = params.U.sum(axis=0)[self.agent[r]]
        spread = params.A.sum(axis=0)  # (C', L): Σ_c a_cc'l
        endo = np.einsum("bkl,bkl->b", spread[self.history[r]], self.integral[r])
        return self.interval[r] * mu_total + endo

    def nll(
        self, params: ModelParams, floor: float, rows: np.ndarray | None = None
    ) -> np.ndarray:
        """f_i(θ) = Xᵀθ - log(max(xᵀθ, floor)) for each selected event."""
        lam = np.maximum(self.intensities(params, rows), floor)
        return self.compensators(params, rows) - np.log(lam)

    def gradient(
        self, params: ModelParams, lambda0: float, rows: np.ndarray | None = None
    ) -> tuple[np.ndarray, np.ndarray]:
        """
        Σ_i [X_i - x_i / max(x_iᵀθ, λ0)] over the selected events.

        Returns the U-block (C, M) and A-block (C, C, L). Accumulation uses
        np.add.at, which applies updates in row order.
        """
        r = self._rows(rows)
        C, M, L = params.C, params.M, params.L
        ent, ag, hist = self.entity[r], self.agent[r], self.history[r]
        inv = 1.0 / np.maximum(self.intensities(params, r), lambda0)

        per_agent = np.zeros(M)
        np.add.at(per_agent, ag, self.interval[r])
        grad_U = np.broadcast_to(per_agent, (C, M)).copy()
        np.add.at(grad_U, (ent, ag), -inv)

        spread = np.zeros((C, L))
        np.add.at(spread, hist.ravel(), self.integral[r].reshape(-1, L))
        grad_A = np.broadcast_to(spread, (C, C, L)).copy()
        targets = np.broadcast_to(ent[:, None], hist.shape)
        np.add.at(grad_A, (targets, hist), -self.point[r] * inv[:, None, None])
        return grad_U, grad_A

    def touched_nonzeros(self, C: int, rows: np.ndarray | None = None) -> int:
        """
        Feature entries read by one gradient evaluation of the selected rows.

        Per event: 1 + k·L point entries and C + k·L interval entries, where
        k ≤ J is the number of contributing history events.
        """
        r = self._rows(rows)
        return int(np.sum(1 + C + 2 * self.depth[r] * self.basis.L))
