"""Sub-commands answering match and equality queries."""

import argparse

from dependency_injector.wiring import Provide, inject

from app.internal.cli.v1.common import (
    add_input_arguments,
    add_strategy_argument,
    print_trace,
)
from app.internal.pkg.middlewares.handle_cli_exceptions import handle_cli_exceptions
from app.internal.services import Services
from app.internal.services.v1 import MatchService, SlpService
from app.pkg.models import v1 as models
from app.pkg.settings import settings

__all__ = ["register"]


@handle_cli_exceptions
@inject
def run_match(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
    match_service: MatchService = Provide[Services.v1.match_service],
) -> int:
    slp = slp_service.load(args.text, args.pattern, args.text_raw, args.pattern_raw)
    query = models.MatchQuery(
        count=args.count,
        first=args.first,
        last=args.last,
        positions=args.positions,
        strategy=args.strategy or settings.ENGINE.STRATEGY,
        trace=args.trace,
        explicit=args.explicit,
    )
    report = match_service.match(slp, query, print_trace if args.trace else None)
    for line in report.render(query):
        print(line)
    return 0 if report.count > 0 else 1


@handle_cli_exceptions
@inject
def run_equal(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
    match_service: MatchService = Provide[Services.v1.match_service],
) -> int:
    slp = slp_service.load(args.text, args.pattern, args.text_raw, args.pattern_raw)
    same = match_service.equal(slp, args.strategy)
    print("equal" if same else "different")
    return 0 if same else 1


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("match", help="find the pattern in the text")
    add_input_arguments(parser)
    parser.add_argument("--count", action="store_true", help="print the number of occurrences")
    parser.add_argument("--first", action="store_true", help="print the first position")
    parser.add_argument("--last", action="store_true", help="print the last position")
    parser.add_argument(
        "--positions",
        type=int,
        metavar="N",
        help="print up to N leading positions",
    )
    add_strategy_argument(parser)
    parser.add_argument("--trace", action="store_true", help="per-phase JSON lines on stderr")
    parser.add_argument(
        "--explicit",
        action="store_true",
        help="decompress and run the explicit-string algorithm",
    )
    parser.set_defaults(handler=run_match)

    parser = subparsers.add_parser("equal", help="test whether text and pattern are equal")
    add_input_arguments(parser)
    add_strategy_argument(parser)
    parser.set_defaults(handler=run_equal)
