"""
Shared base for hawkeslab management commands.
"""

import json
import sys
from pathlib import Path
from typing import Any

from django.core.management.base import BaseCommand

from apps.dataio.exception_handler import handle_exception
from apps.dataio.exceptions import DataFormatError
from apps.dataio.serializers import validated
from apps.hawkes.exceptions import HawkesError


class HawkesCommand(BaseCommand):
    """
    BaseCommand without system checks whose domain errors end the process
    with the error payload and the mapped exit code.
    """

    requires_system_checks = []
    requires_migrations_checks = False

    def run_from_argv(self, argv: list[str]) -> None:
        try:
            super().run_from_argv(argv)
        except HawkesError as exc:
            sys.exit(handle_exception(exc))

    def load_config(self, path: str | None, serializer_class) -> dict[str, Any]:
        """Validated contents of a JSON config file, or {} without one."""
        if not path:
            return {}
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise DataFormatError(
                f"Invalid JSON in {path}",
                details={"path": path, "line": exc.lineno, "reason": exc.msg},
            ) from exc
        return validated(serializer_class, raw, path=path)

    def emit(self, payload: dict[str, Any]) -> None:
        self.stdout.write(json.dumps(payload, sort_keys=True))
