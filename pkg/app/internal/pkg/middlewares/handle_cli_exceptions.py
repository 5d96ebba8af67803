"""Decorator that turns raised exceptions into an exit code.

Examples:
    For example, if in some level in code you raise error inherited by
    :class:`.BaseSLPException`::

        >>> ...  # exceptions.py
        >>> class E(BaseSLPException):
        ...     exit_code = 2
        ...     message = "test error."

        >>> ...  # some_command.py
        >>> @handle_cli_exceptions
        ... def run_something(args) -> int:
        ...     raise E

    When ``run_something`` is called, the message goes to stderr and the
    command returns 2.
"""

from __future__ import annotations

import functools
import sys
from collections.abc import Callable

from app.pkg.logger import get_logger
from app.pkg.models.base import BaseSLPException

__all__ = ["handle_cli_exceptions"]

logger = get_logger(__name__)

#: Exit code of failures that are not caused by the input.
INTERNAL_ERROR = 3


def handle_cli_exceptions(command: Callable[..., int]) -> Callable[..., int]:
    """Handle all exceptions escaping ``command``.

    Args:
        command:
            Sub-command handler returning an exit code.

    Returns:
        Wrapped handler returning ``exc.exit_code`` for
        :class:`.BaseSLPException` and :data:`INTERNAL_ERROR` for anything
        else.
    """

    @functools.wraps(command)
    def wrapper(*args, **kwargs) -> int:
        try:
            return command(*args, **kwargs)
        except BaseSLPException as exc:
            log_data = {
                "type": type(exc).__name__,
                "command": command.__name__,
                "error": exc.message,
                "code": exc.exit_code,
            }
            logger.error("Command failed.", extra={"context": log_data})
            print(f"error: {exc.message}", file=sys.stderr)
            return exc.exit_code
        except Exception as exc:
            log_data = {
                "type": "Internal Exception",
                "command": command.__name__,
                "error": str(exc),
            }
            logger.exception("Internal exception occurred.", extra={"context": log_data})
            print(f"internal error: {exc}", file=sys.stderr)
            return INTERNAL_ERROR

    return wrapper
