"""Exceptions for brute-force referees."""

from app.pkg.models.base import BaseSLPException

__all__ = ["OracleBudgetExceeded"]


class OracleBudgetExceeded(BaseSLPException):
    message = "Decompressed value exceeds the oracle budget."
