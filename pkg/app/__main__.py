"""Console entry point: ``slp-fcpm`` or ``python -m app``."""

import sys

from app import create_app


def main(argv: list[str] | None = None) -> int:
    parser = create_app()
    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
