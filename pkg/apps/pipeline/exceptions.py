"""
Pipeline exceptions with standardized error codes.
"""

from apps.hawkes.exceptions import HawkesError


class PipelineError(HawkesError):
    """Base pipeline error."""

    error_code = "PIPELINE_ERROR"

    @property
    def default_message(self) -> str:
        return "Learning pipeline failed"


class UnknownStrategyError(PipelineError):
    """Strategy name is not recognized."""

    error_code = "UNKNOWN_STRATEGY"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Unknown learning strategy"


class PipelineConfigError(PipelineError):
    """Pipeline configuration is invalid."""

    error_code = "VALIDATION_FAILED"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Pipeline configuration is invalid"
