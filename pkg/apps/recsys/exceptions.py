"""
Recommendation harness exceptions with standardized error codes.
"""

from apps.hawkes.exceptions import HawkesError


class RecsysError(HawkesError):
    """Base recommendation error."""

    error_code = "RECSYS_ERROR"

    @property
    def default_message(self) -> str:
        return "Recommendation failed"


class EmptyDatasetError(RecsysError):
    """No user survives the cold-start filters."""

    error_code = "EMPTY_DATASET"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "No users satisfy the cold-start filters"
