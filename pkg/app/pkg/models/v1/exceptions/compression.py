"""Exceptions for compression primitives."""

from app.pkg.models.base import BaseSLPException

__all__ = ["EqualLettersError", "NotFreshLetterError", "ContractViolation"]


class EqualLettersError(BaseSLPException):
    message = "Pair compression needs two different letters."


class NotFreshLetterError(BaseSLPException):
    message = "Replacement letter already occurs in the instance."


class ContractViolation(BaseSLPException):
    """An internal invariant of the phase engine does not hold."""

    exit_code = 3
    message = "Internal contract violated."
