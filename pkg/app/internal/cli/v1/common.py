"""Helpers shared by the sub-commands."""

import argparse
import sys

from app.pkg.models import v1 as models

__all__ = ["add_input_arguments", "add_strategy_argument", "print_trace", "letter_list"]


def add_input_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("text", nargs="?", help="SLP file holding the text axiom")
    parser.add_argument(
        "pattern",
        nargs="?",
        help="SLP file holding the pattern axiom (default: the text file)",
    )
    parser.add_argument("--text-raw", help="plain text, built into a balanced grammar")
    parser.add_argument("--pattern-raw", help="plain pattern, built into a balanced grammar")


def add_strategy_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--strategy",
        choices=[strategy.value for strategy in models.Strategy],
        default=None,
        help="crossing pairs schedule (default from ENGINE__STRATEGY)",
    )


def print_trace(stats: models.PhaseStats) -> None:
    print(stats.to_json_line(), file=sys.stderr)


def letter_list(value: str) -> list[int]:
    """``"0,2,5"`` -> ``[0, 2, 5]``."""
    try:
        return [int(token) for token in value.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated letters, got {value!r}")
