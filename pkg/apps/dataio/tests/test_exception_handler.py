"""
Unit tests for the command-line error payloads.
"""

import io
import json

import pytest
from django.core.management.base import CommandError
from rest_framework.exceptions import ValidationError

from apps.dataio.exception_handler import (
    EXIT_INVALID,
    EXIT_RUNTIME,
    error_payload,
    handle_exception,
)
from apps.dataio.exceptions import CheckpointVersionError
from apps.hawkes.exceptions import DimensionError
from apps.optimization.exceptions import EmptyDataError, OptimizationError


@pytest.mark.unit
class TestErrorPayload:
    """Tests for error_payload."""

    def test_validation_error_exits_one(self):
        payload, code = error_payload(DimensionError("bad shape", {"C": 2}))

        assert code == EXIT_INVALID
        assert payload == {
            "error": {
                "code": "DIMENSION_MISMATCH",
                "message": "bad shape",
                "details": {"C": 2},
            }
        }

    def test_checkpoint_version(self):
        payload, code = error_payload(CheckpointVersionError())

        assert code == EXIT_INVALID
        assert payload["error"]["code"] == "CHECKPOINT_VERSION_MISMATCH"

    def test_runtime_domain_error_exits_two(self):
        _, code = error_payload(OptimizationError())

        assert code == EXIT_RUNTIME

    def test_empty_data_is_invalid_input(self):
        payload, code = error_payload(EmptyDataError())

        assert code == EXIT_INVALID
        assert payload["error"]["code"] == "EMPTY_DATA"

    def test_command_error(self):
        payload, code = error_payload(CommandError("Unknown command: frobnicate"))

        assert code == EXIT_INVALID
        assert payload["error"]["code"] == "USAGE_ERROR"

    def test_drf_validation_error(self):
        payload, code = error_payload(ValidationError({"delta": ["too large"]}))

        assert code == EXIT_INVALID
        assert "delta" in payload["error"]["details"]

    def test_missing_file(self):
        exc = FileNotFoundError(2, "No such file", "events.jsonl")

        payload, code = error_payload(exc)

        assert code == EXIT_INVALID
        assert payload["error"]["details"] == {"path": "events.jsonl"}

    def test_unexpected_error_hides_message(self):
        payload, code = error_payload(RuntimeError("secret internals"))

        assert code == EXIT_RUNTIME
        assert payload["error"]["code"] == "INTERNAL_ERROR"
        assert "secret" not in payload["error"]["message"]


@pytest.mark.unit
class TestHandleException:
    """Tests for handle_exception."""

    def test_writes_one_json_line(self):
        stream = io.StringIO()

        code = handle_exception(DimensionError("bad shape"), stream)

        assert code == EXIT_INVALID
        assert json.loads(stream.getvalue())["error"]["message"] == "bad shape"
