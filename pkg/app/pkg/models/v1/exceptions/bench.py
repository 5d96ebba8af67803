"""Exceptions for the benchmark harness."""

from app.pkg.models.base import BaseSLPException

__all__ = ["BenchSpecError"]


class BenchSpecError(BaseSLPException):
    message = "Malformed bench spec."
