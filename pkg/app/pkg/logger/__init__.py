"""Logger module."""

# ruff: noqa

from app.pkg.logger.logger import get_logger
