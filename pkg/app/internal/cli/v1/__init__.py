"""V1 sub-commands."""

import argparse

from app.internal.cli.v1 import bench, match, slp

__all__ = ["register"]


def register(subparsers: argparse._SubParsersAction) -> None:
    for module in (slp, match, bench):
        module.register(subparsers)
