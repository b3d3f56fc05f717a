"""
`hawkes` console entry point.

Dispatches `hawkes <command> [flags]` to the management commands of
apps.dataio. Command names accept hyphens (check-bound) as well as
underscores. Errors are written to stderr as a JSON payload and mapped to
the exit code: 1 for invalid input, 2 for runtime failures.
"""

import logging
import os
import sys
from pathlib import Path

import django
from django.apps import apps
from django.core.management import find_commands, load_command_class
from django.core.management.base import CommandError, handle_default_options

logger = logging.getLogger(__name__)

APP_NAME = "apps.dataio"


def _commands() -> list[str]:
    path = Path(apps.get_app_config("dataio").path) / "management"
    return sorted(find_commands(str(path)))


def _usage(commands: list[str]) -> str:
    names = "\n".join(f"  {name.replace('_', '-')}" for name in commands)
    return f"usage: hawkes <command> [options]\n\ncommands:\n{names}\n"


def cli_main(argv: list[str] | None = None) -> int:
    """Run one subcommand and return its exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "hawkeslab.settings")
    django.setup()

    from apps.dataio.exception_handler import EXIT_INVALID, EXIT_OK, handle_exception

    commands = _commands()

    if not argv or argv[0] in ("-h", "--help"):
        stream = sys.stdout if argv else sys.stderr
        stream.write(_usage(commands))
        return EXIT_OK if argv else EXIT_INVALID

    name = argv[0].replace("-", "_")
    if name not in commands:
        sys.stderr.write(_usage(commands))
        return handle_exception(CommandError(f"Unknown command: {argv[0]}"))

    command = load_command_class(APP_NAME, name)
    command._called_from_command_line = False
    parser = command.create_parser("hawkes", argv[0])
    try:
        options = parser.parse_args(argv[1:])
    except SystemExit as exc:
        # --help
        return EXIT_OK if not exc.code else EXIT_INVALID
    except CommandError as exc:
        sys.stderr.write(parser.format_usage())
        return handle_exception(exc)

    cmd_options = vars(options)
    args = cmd_options.pop("args", ())
    handle_default_options(options)
    try:
        command.execute(*args, **cmd_options)
    except Exception as exc:
        return handle_exception(exc)
    logger.debug(f"Command {name} finished")
    return EXIT_OK


def main() -> None:
    sys.exit(cli_main())
