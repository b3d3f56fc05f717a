"""
Hawkes model services.

Featurization, intensity evaluation and the event-level likelihood shared by
the simulator, the optimizers and the recommendation harness.
"""

from apps.hawkes.services.features import (
    EventFeatures,
    FeatureCache,
    HistoryWindow,
    featurize,
    history_window,
)
from apps.hawkes.services.likelihood import (
    branching_matrix,
    compensator_tail,
    default_lambda0,
    endogenous_scores,
    intensity,
    nll_event,
    nll_total,
    spectral_radius,
)

__all__ = [
    "EventFeatures",
    "FeatureCache",
    "HistoryWindow",
    "branching_matrix",
    "compensator_tail",
    "default_lambda0",
    "endogenous_scores",
    "featurize",
    "history_window",
    "intensity",
    "nll_event",
    "nll_total",
    "spectral_radius",
]
