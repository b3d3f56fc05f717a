"""
Superposition of event sequences.

The union of sequences generated by HP(μ^m, A) on a shared window is itself
a Hawkes process HP(Σ_m μ^m, A), so merged sequences can be learned as
additional agents.
"""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from apps.hawkes.exceptions import HawkesValidationError
from apps.hawkes.types import EventSequence
from apps.superposition.exceptions import MergeError

logger = logging.getLogger(__name__)


def merge_sequences(
    sequences: Sequence[EventSequence],
    agent_id: int = 0,
    C: int | None = None,
) -> EventSequence:
    """
    Union of the events of several sequences, sorted by time.

    Equal timestamps keep source order, then entity order.

    Args:
        sequences: Sequences on a shared horizon.
        agent_id: Label of the merged sequence.
        C: Entity count, checked against every input when given.

    Raises:
        MergeError: If there is nothing to merge, horizons differ, an entity
            falls outside [0, C), or two sources hold the same event.
    """
    if not sequences:
        raise MergeError("Cannot merge an empty list of sequences")
    horizons = {seq.horizon for seq in sequences}
    if len(horizons) > 1:
        raise MergeError(
            "Sequences have different horizons",
            details={"horizons": sorted(horizons)},
        )
    if C is not None:
        for seq in sequences:
            if len(seq) and int(seq.entities.max()) >= C:
                raise MergeError(
                    "Sequence entity outside [0, C)",
                    details={"agent": int(seq.agent_id), "C": C},
                )

    times = np.concatenate([seq.times for seq in sequences])
    entities = np.concatenate([seq.entities for seq in sequences])
    source = np.repeat(np.arange(len(sequences)), [len(s) for s in sequences])
    order = np.lexsort((entities, source, times))
    try:
        return EventSequence(
            agent_id, times[order], entities[order], horizons.pop()
        )
    except HawkesValidationError as exc:
        raise MergeError(exc.message, details=exc.details) from exc


def estimate_exogenous(sequence: EventSequence, C: int) -> np.ndarray:
    """μ̂_c = N_c(T) / T."""
    sequence.check_entities(C)
    return sequence.counts(C) / sequence.horizon


def exogenous_estimates(data: Sequence[EventSequence], C: int) -> np.ndarray:
    """Count-based estimates of every sequence as the columns of a C x M matrix."""
    if not data:
        return np.zeros((C, 0))
    return np.column_stack([estimate_exogenous(seq, C) for seq in data])


def orthogonality_gram(U: np.ndarray) -> np.ndarray:
    """Pairwise inner products of the agent columns, shape (M, M)."""
    U = np.asarray(U, dtype=float)
    return U.T @ U
