"""
Optimization services.

Stochastic (StocOpt) and full-gradient (BatchOpt) projected descent on the
event-level likelihood, plus fit reports and error tracking.
"""

from apps.optimization.services.report import (
    REPORT_COLUMNS,
    EpochRecord,
    ErrorTracker,
    FitReport,
    relative_errors,
)
from apps.optimization.services.stochastic import (
    OptConfig,
    batch_fit,
    grad_event,
    initial_params,
    project_nonneg,
    split_monitor,
    stoc_fit,
)

__all__ = [
    "REPORT_COLUMNS",
    "EpochRecord",
    "ErrorTracker",
    "FitReport",
    "OptConfig",
    "batch_fit",
    "grad_event",
    "initial_params",
    "project_nonneg",
    "relative_errors",
    "split_monitor",
    "stoc_fit",
]
