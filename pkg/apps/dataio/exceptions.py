"""
Data format exceptions with standardized error codes.
"""

from apps.hawkes.exceptions import HawkesValidationError


class DataFormatError(HawkesValidationError):
    """Input file is malformed."""

    error_code = "DATA_FORMAT_ERROR"

    @property
    def default_message(self) -> str:
        return "Input file is malformed"


class CheckpointVersionError(DataFormatError):
    """Checkpoint schema version is not supported."""

    error_code = "CHECKPOINT_VERSION_MISMATCH"

    @property
    def default_message(self) -> str:
        return "Unsupported checkpoint schema version"


class CheckpointValidationError(DataFormatError):
    """Checkpoint arrays disagree with its dimensions."""

    error_code = "CHECKPOINT_INVALID"

    @property
    def default_message(self) -> str:
        return "Checkpoint contents are inconsistent"
