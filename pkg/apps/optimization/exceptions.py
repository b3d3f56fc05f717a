"""
Optimization exceptions with standardized error codes.
"""

from apps.hawkes.exceptions import HawkesError


class OptimizationError(HawkesError):
    """Base optimization error."""

    error_code = "OPTIMIZATION_ERROR"

    @property
    def default_message(self) -> str:
        return "Optimization failed"


class OptConfigError(OptimizationError):
    """Optimizer configuration is invalid."""

    error_code = "VALIDATION_FAILED"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Optimizer configuration is invalid"


class EmptyDataError(OptimizationError):
    """No events to learn from."""

    error_code = "EMPTY_DATA"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Dataset contains no events"
