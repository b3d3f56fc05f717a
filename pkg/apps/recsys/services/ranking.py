"""
Endogenous-intensity recommendation and top-N evaluation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

import numpy as np
import pandas as pd

from apps.hawkes.exceptions import HawkesValidationError
from apps.hawkes.services import endogenous_scores
from apps.hawkes.types import EventSequence, ModelParams

logger = logging.getLogger(__name__)

USER_COLUMNS = ["user", "hits", "precision", "recall", "f1"]


def recommend(
    params: ModelParams,
    history: EventSequence,
    t: float,
    N: int,
    agent: int | None = None,
) -> list[int]:
    """
    Top-N entities by endogenous intensity at time t.

    The score of entity c is Σ_j Σ_l a_{c c_j l} g_l(t - t_j) over history
    events before t; exogenous intensities do not enter. When the history
    has no event before t, the agent's exogenous column ranks instead (all
    zero when no agent is given). Ties go to the lower entity index.

    Raises:
        HawkesValidationError: If N < 1.
    """
    if N < 1:
        raise HawkesValidationError("N must be at least 1", details={"N": N})
    C = params.C
    if N > C:
        logger.warning(f"Top-{N} exceeds the {C} entities; clamping")
        N = C
    history.check_entities(C)

    if np.any(history.times < t):
        scores = endogenous_scores(params, history, t)
    elif agent is not None:
        params.check_indices(agent, 0)
        scores = params.U[:, agent]
    else:
        scores = np.zeros(C)
    return [int(c) for c in np.argsort(-scores, kind="stable")[:N]]


@dataclass
class RecResult:
    """
    Ranked lists and macro-averaged top-N metrics, in percent.

    Attributes:
        N: List length.
        ranked: Recommendation list per evaluated user.
        per_user: One row per evaluated user.
        excluded: Users left out for lack of a truth set.
    """

    N: int
    ranked: dict[int, list[int]]
    per_user: pd.DataFrame
    excluded: list[int] = field(default_factory=list)

    @property
    def precision(self) -> float:
        return self._mean("precision")

    @property
    def recall(self) -> float:
        return self._mean("recall")

    @property
    def f1(self) -> float:
        return self._mean("f1")

    @property
    def n_users(self) -> int:
        return len(self.per_user)

    def _mean(self, column: str) -> float:
        return float(self.per_user[column].mean()) if len(self.per_user) else 0.0

    def to_row(self, **keys: Any) -> dict[str, Any]:
        return {
            **keys,
            "N": self.N,
            "users": self.n_users,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def user_scores(
    ranked: Sequence[int], truth: set[int]
) -> tuple[int, float, float, float]:
    """(hits, P, R, F1) of one user, in percent; F1 is 0 when P + R = 0."""
    hits = len(set(ranked) & truth)
    precision = 100.0 * hits / len(ranked) if ranked else 0.0
    recall = 100.0 * hits / len(truth)
    total = precision + recall
    f1 = 2.0 * precision * recall / total if total > 0 else 0.0
    return hits, precision, recall, f1


def evaluate_topn(
    results: Mapping[int, Sequence[int]],
    truth: Mapping[int, set[int] | frozenset[int]],
    N: int,
) -> RecResult:
    """
    Macro-averaged P@N, R@N and F1@N over users.

    Lists are cut to their first N entries. Users without a nonempty truth
    set are excluded with a warning. Truth users without a list are logged
    and skipped.
    """
    rows, ranked, excluded = [], {}, []
    for user in sorted(results):
        items = set(truth.get(user, ()))
        if not items:
            excluded.append(int(user))
            continue
        top = [int(c) for c in results[user][:N]]
        hits, p, r, f1 = user_scores(top, items)
        ranked[int(user)] = top
        rows.append(
            {"user": int(user), "hits": hits, "precision": p, "recall": r, "f1": f1}
        )

    missing = sorted(set(truth) - set(results))
    if excluded:
        logger.warning(f"Excluded {len(excluded)} users with an empty truth set")
    if missing:
        logger.warning(f"{len(missing)} users with a truth set have no list")
    per_user = pd.DataFrame(rows, columns=USER_COLUMNS)
    return RecResult(N=N, ranked=ranked, per_user=per_user, excluded=excluded)
