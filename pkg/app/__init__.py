import argparse

from app.configuration import __containers__
from app.internal.cli import __commands__


def create_app() -> argparse.ArgumentParser:
    """Create the ``slp-fcpm`` argument parser.

    :func:`.create_app` is a global point of your application.
    In :func:`.create_app` you register all sub-commands and wire the
    dependency containers required by their handlers.

    Examples:
        Parse arguments and run the selected sub-command::

            >>> parser = create_app()
            >>> args = parser.parse_args(["validate", "testdata/ababa_baba.slp"])
            >>> exit_code = args.handler(args)
    """
    parser = argparse.ArgumentParser(
        prog="slp-fcpm",
        description="Pattern matching and equality on SLP-compressed strings.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    __commands__.register_commands(subparsers)
    __containers__.wire_packages()
    return parser
