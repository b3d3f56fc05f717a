"""
Superposition exceptions with standardized error codes.
"""

from apps.hawkes.exceptions import HawkesError


class SuperpositionError(HawkesError):
    """Base superposition error."""

    error_code = "SUPERPOSITION_ERROR"

    @property
    def default_message(self) -> str:
        return "Superposition failed"


class PlanError(SuperpositionError):
    """Plan is not a partition of the sources into nonempty folders."""

    error_code = "INVALID_PLAN"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Superposition plan is invalid"


class MergeError(SuperpositionError):
    """Sequences cannot be superposed."""

    error_code = "MERGE_MISMATCH"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Sequences do not share horizon and entity space"
