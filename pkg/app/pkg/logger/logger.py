"""Logger module.

Records go to stderr as one JSON object each, so stdout carries only the
answers of the command line.
"""

import json
import logging
import sys

from colorama import Fore, Style, just_fix_windows_console

from app.pkg.models.core.logger import LoggerLevel
from app.pkg.settings import settings

__all__ = ["JsonFormatter", "NestedExtraLogger", "get_logger"]

just_fix_windows_console()

#: Record attributes written to every line, keyed by their JSON name.
RECORD_FIELDS: dict[str, str] = {
    "timestamp": "asctime",
    "level": "levelname",
    "logger": "name",
    "function": "funcName",
    "message": "message",
    "extra": "extra",
}


class JsonFormatter(logging.Formatter):
    """Render a record as JSON, coloured by level when stderr is a tty.

    Args:
        color: Wrap lines in level colours. Off for pipes and files.
        indent: Indentation passed to :func:`json.dumps`.
    """

    LEVEL_COLOR: dict[str, str] = {
        "DEBUG": Fore.CYAN,
        "INFO": Fore.GREEN,
        "WARNING": Fore.YELLOW,
        "ERROR": Fore.RED,
        "CRITICAL": Fore.MAGENTA,
    }

    default_time_format = "%Y-%m-%dT%H:%M:%S"
    default_msec_format = "%s.%03dZ"

    def __init__(self, color: bool = False, indent: int | None = None) -> None:
        super().__init__()
        self.color = color
        self.indent = indent

    def format(self, record: logging.LogRecord) -> str:
        record.message = record.getMessage()
        record.asctime = self.formatTime(record)
        payload = {key: getattr(record, attr, "") for key, attr in RECORD_FIELDS.items()}
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        if record.stack_info:
            payload["stack_info"] = self.formatStack(record.stack_info)

        line = json.dumps(payload, default=str, indent=self.indent)
        if not self.color:
            return line
        return self.LEVEL_COLOR.get(record.levelname, "") + line + Style.RESET_ALL


class NestedExtraLogger(logging.Logger):
    """Logger that keeps the ``extra`` dict under one record attribute."""

    def makeRecord(self, name, level, fn, lno, msg, args, exc_info, func=None, extra=None, sinfo=None):
        return super().makeRecord(
            name, level, fn, lno, msg, args, exc_info, func, {"extra": extra or {}}, sinfo,
        )


logging.setLoggerClass(NestedExtraLogger)


def get_logger(name: str) -> logging.Logger:
    """Retrieve or create a logger writing JSON lines to stderr.

    Level comes from ``LOGGER__LEVEL``; ``LOGGER__ENVIRONMENT=dev`` indents
    the records.
    """
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            JsonFormatter(
                color=sys.stderr.isatty(),
                indent=4 if settings.LOGGER.ENVIRONMENT == "dev" else None,
            ),
        )
        logger.addHandler(handler)
        logger.propagate = False
    logger.setLevel(LoggerLevel(settings.LOGGER.LEVEL).value)
    return logger
