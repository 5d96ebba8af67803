"""Exceptions raised while reading, building or validating SLPs."""

from __future__ import annotations

from typing import TYPE_CHECKING

from app.pkg.models.base import BaseSLPException

if TYPE_CHECKING:
    from app.pkg.models.v1.app.validation import ValidationReport

__all__ = [
    "SlpSyntaxError",
    "InvalidSlpError",
    "UnknownSymbolError",
    "EmptyTextError",
    "ParameterOutOfRange",
    "PatternTooShort",
    "EmptyPattern",
]


class SlpSyntaxError(BaseSLPException):
    """File does not follow the ``slp v1`` format."""

    message = "Malformed SLP file."
    line: int | None = None

    def __init__(self, message: str | None = None, line: int | None = None):
        self.line = line
        if message is not None and line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidSlpError(BaseSLPException):
    """Grammar violates the relaxed SLP form or the axiom constraints."""

    message = "Invalid SLP."
    report: ValidationReport | None = None

    def __init__(self, report: ValidationReport | None = None):
        self.report = report
        message = None
        if report is not None and report.violations:
            message = "; ".join(str(v) for v in report.violations)
        super().__init__(message)


class UnknownSymbolError(BaseSLPException):
    message = "Unknown symbol."


class EmptyTextError(BaseSLPException):
    message = "Text must not be empty."


class ParameterOutOfRange(BaseSLPException):
    message = "Parameter out of range."


class PatternTooShort(BaseSLPException):
    message = "Pattern must have at least two letters."


class EmptyPattern(BaseSLPException):
    message = "Pattern must not be empty."
