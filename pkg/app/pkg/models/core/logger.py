"""LoggerLevel model."""

from app.pkg.models.base import BaseEnum

__all__ = ["LoggerLevel"]


class LoggerLevel(str, BaseEnum):
    """Names accepted by :meth:`logging.Logger.setLevel`."""

    CRITICAL = "CRITICAL"
    ERROR = "ERROR"
    WARNING = "WARNING"
    INFO = "INFO"
    DEBUG = "DEBUG"
    NOTSET = "NOTSET"
