"""
Hawkes model exceptions with standardized error codes.

Every domain error in the project derives from HawkesError. Each class maps
to an error code and a CLI exit code: 1 for invalid input, 2 for failures
while running an otherwise valid request.
"""

from typing import Any


class HawkesError(Exception):
    """Base error for every hawkeslab failure."""

    error_code: str = "HAWKES_ERROR"
    exit_code: int = 2

    def __init__(self, message: str = "", details: dict[str, Any] | None = None):
        self.message = message or self.default_message
        self.details = details or {}
        super().__init__(self.message)

    @property
    def default_message(self) -> str:
        return "Hawkes model error occurred"


class HawkesValidationError(HawkesError):
    """Input violates a model invariant."""

    error_code = "VALIDATION_FAILED"
    exit_code = 1

    @property
    def default_message(self) -> str:
        return "Input validation failed"


class DimensionError(HawkesValidationError):
    """Index or array shape inconsistent with (C, M, L)."""

    error_code = "DIMENSION_MISMATCH"

    @property
    def default_message(self) -> str:
        return "Dimension mismatch"


class EventIndexError(HawkesValidationError):
    """Event index outside the sequence."""

    error_code = "EVENT_INDEX_OUT_OF_RANGE"

    @property
    def default_message(self) -> str:
        return "Event index out of range"
