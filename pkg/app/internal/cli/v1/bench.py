"""Benchmark sub-command."""

import argparse

from dependency_injector.wiring import Provide, inject

from app.internal.pkg.middlewares.handle_cli_exceptions import handle_cli_exceptions
from app.internal.services import Services
from app.internal.services.v1 import BenchService

__all__ = ["register"]


@handle_cli_exceptions
@inject
def run_bench(
    args: argparse.Namespace,
    bench_service: BenchService = Provide[Services.v1.bench_service],
) -> int:
    spec = bench_service.load_spec(args.spec)
    if args.workers is not None:
        spec.workers = args.workers
    for record in bench_service.run(spec):
        print(record.to_json_line(), flush=True)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="run a benchmark spec, JSON lines on stdout")
    parser.add_argument("spec", help="bench spec JSON file, see docs/bench.md")
    parser.add_argument("--workers", type=int, help="override the process pool size")
    parser.set_defaults(handler=run_bench)
