"""
Exception handler for standardized command-line error reports.

Converts exceptions to a JSON payload on stderr:
{
    "error": {
        "code": "ERROR_CODE",
        "message": "Human-readable message",
        "details": {}
    }
}
and to the process exit code: 1 for invalid input, 2 for runtime failures.
"""

import json
import logging
import sys
from typing import Any, TextIO

from django.core.management.base import CommandError
from rest_framework.exceptions import ValidationError as DRFValidationError

from apps.hawkes.exceptions import HawkesError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2


def error_payload(exc: BaseException) -> tuple[dict[str, Any], int]:
    """
    Map an exception to (payload, exit code).

    Handles:
    - HawkesError subclasses (our domain exceptions)
    - CommandError (bad flags, usage errors)
    - DRF validation errors raised outside a serializer wrapper
    - Anything else as an internal error
    """
    if isinstance(exc, HawkesError):
        return _payload(exc.error_code, exc.message, exc.details), exc.exit_code

    if isinstance(exc, CommandError):
        return _payload("USAGE_ERROR", str(exc), {}), EXIT_INVALID

    if isinstance(exc, DRFValidationError):
        details = exc.detail if isinstance(exc.detail, dict) else {"errors": exc.detail}
        return _payload("VALIDATION_FAILED", "Invalid input", details), EXIT_INVALID

    if isinstance(exc, (FileNotFoundError, IsADirectoryError)):
        return (
            _payload("FILE_NOT_FOUND", str(exc), {"path": str(exc.filename)}),
            EXIT_INVALID,
        )

    return _payload("INTERNAL_ERROR", "An unexpected error occurred", {}), EXIT_RUNTIME


def handle_exception(exc: BaseException, stream: TextIO | None = None) -> int:
    """Write the error payload and return the exit code."""
    payload, code = error_payload(exc)
    if code == EXIT_RUNTIME and not isinstance(exc, HawkesError):
        logger.exception(f"Unexpected error: {exc}")
    else:
        logger.debug(f"Command failed with {payload['error']['code']}")
    stream = stream or sys.stderr
    stream.write(json.dumps(payload, default=str) + "\n")
    return code


def _payload(code: str, message: str, details: dict[str, Any]) -> dict[str, Any]:
    return {"error": {"code": code, "message": message, "details": details}}
