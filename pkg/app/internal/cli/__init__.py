"""Global point for collected sub-commands. ``__commands__`` is a
:class:`.Commands` instance that registers every sub-command.

Examples:
    After declaring all sub-commands, you need to register them in your parser::

        >>> import argparse
        >>> parser = argparse.ArgumentParser()
        >>> __commands__.register_commands(parser.add_subparsers())
"""

from app.internal.cli import v1
from app.pkg.models.core.commands import Commands

__all__ = [
    "__commands__",
]


__commands__ = Commands(
    registrars=(v1.register,),
)
