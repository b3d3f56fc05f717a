"""
Pipeline services.

Strategy dispatch, the alternating superposed fit and synthetic sweeps.
"""

from apps.pipeline.services.strategies import (
    PipelineConfig,
    Strategy,
    relative_errors,
    run_strategy,
    superposed_fit,
)
from apps.pipeline.services.sweep import (
    PROTOCOL_CHECKS,
    SWEEP_COLUMNS,
    SWEEP_OPT,
    SweepSpec,
    protocol_checks,
    run_sweep,
    summarize_final,
    sweep_from_dict,
)

__all__ = [
    "PROTOCOL_CHECKS",
    "SWEEP_COLUMNS",
    "SWEEP_OPT",
    "PipelineConfig",
    "Strategy",
    "SweepSpec",
    "protocol_checks",
    "relative_errors",
    "run_strategy",
    "run_sweep",
    "summarize_final",
    "superposed_fit",
    "sweep_from_dict",
]
