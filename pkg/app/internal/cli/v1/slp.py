"""Sub-commands that read, generate and inspect SLP files."""

import argparse
from pathlib import Path

from dependency_injector.wiring import Provide, inject

from app.internal.cli.v1.common import (
    add_strategy_argument,
    letter_list,
    print_trace,
)
from app.internal.pkg.middlewares.handle_cli_exceptions import handle_cli_exceptions
from app.internal.services import Services
from app.internal.services.v1 import SlpService
from app.pkg.models.v1.exceptions import InvalidSlpError
from app.pkg.settings import settings

__all__ = ["register"]


@handle_cli_exceptions
@inject
def run_validate(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
) -> int:
    report = slp_service.validate(slp_service.load(args.file))
    if not report.valid:
        raise InvalidSlpError(report)
    cnf = "true" if report.chomsky_normal_form else "false"
    print(f"valid rules={report.rules} cnf={cnf}")
    return 0


@handle_cli_exceptions
@inject
def run_decompress(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
) -> int:
    slp = slp_service.load(args.file)
    print(slp_service.decompress(slp, args.which, args.limit))
    return 0


@handle_cli_exceptions
@inject
def run_gen(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
) -> int:
    slp = slp_service.generate(
        args.family,
        size=args.size,
        seed=args.seed,
        rules=args.rules,
        alphabet=args.alphabet,
        pattern_length=args.pattern_length,
        max_text_length=args.max_text_length,
    )
    dump = slp_service.dump(slp)
    if args.output:
        Path(args.output).write_text(dump, encoding="utf-8")
    else:
        print(dump, end="")
    return 0


@handle_cli_exceptions
@inject
def run_scan_pairs(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
) -> int:
    scan = slp_service.scan(slp_service.load(args.file))
    noncrossing = sorted({(record.a, record.b) for record in scan.noncrossing})
    for a, b in sorted(scan.crossing):
        print(f"crossing {a} {b}")
    for a, b in noncrossing:
        print(f"noncrossing {a} {b}")
    return 0


@handle_cli_exceptions
@inject
def run_pop(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
) -> int:
    slp = slp_service.pop(slp_service.load(args.file), args.left, args.right)
    print(slp_service.dump(slp), end="")
    return 0


@handle_cli_exceptions
@inject
def run_phase(
    args: argparse.Namespace,
    slp_service: SlpService = Provide[Services.v1.slp_service],
) -> int:
    slp, stats = slp_service.phase(
        slp_service.load(args.file),
        args.strategy,
        fix_ends=not args.equality,
    )
    print_trace(stats)
    print(slp_service.dump(slp), end="")
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("validate", help="check an SLP file")
    parser.add_argument("file")
    parser.set_defaults(handler=run_validate)

    parser = subparsers.add_parser("decompress", help="print the value of an axiom")
    parser.add_argument("file")
    parser.add_argument("--which", choices=["text", "pattern"], default="text")
    parser.add_argument(
        "--limit",
        type=int,
        default=settings.ORACLE.MAX_DECOMPRESSED_LENGTH,
        help="refuse longer values",
    )
    parser.set_defaults(handler=run_decompress)

    parser = subparsers.add_parser("gen", help="generate an instance")
    parser.add_argument(
        "family",
        choices=["fibonacci", "thue-morse", "power", "random", "instance"],
    )
    parser.add_argument("--size", type=int, help="order, or exponent for power")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--rules", type=int, default=40)
    parser.add_argument("--alphabet", type=int, default=3)
    parser.add_argument("--pattern-length", type=int, default=6)
    parser.add_argument("--max-text-length", type=int, default=5_000)
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")
    parser.set_defaults(handler=run_gen)

    parser = subparsers.add_parser("scan-pairs", help="list crossing and non-crossing pairs")
    parser.add_argument("file")
    parser.set_defaults(handler=run_scan_pairs)

    parser = subparsers.add_parser("pop", help="pop letters for one partition")
    parser.add_argument("file")
    parser.add_argument("--left", type=letter_list, default=[], help="e.g. 0,2")
    parser.add_argument("--right", type=letter_list, default=[], help="e.g. 1")
    parser.set_defaults(handler=run_pop)

    parser = subparsers.add_parser("phase", help="run one phase and dump the grammar")
    parser.add_argument("file")
    add_strategy_argument(parser)
    parser.add_argument(
        "--equality",
        action="store_true",
        help="run an equality phase, without fixing the pattern ends",
    )
    parser.set_defaults(handler=run_phase)
