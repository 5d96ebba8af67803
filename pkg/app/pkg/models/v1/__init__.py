"""Version 1 report models and exceptions."""

# ruff: noqa

from app.pkg.models.v1.app import *
