"""Model for contains sub-command registrars."""

from __future__ import annotations

import argparse
from collections.abc import Callable
from dataclasses import dataclass

__all__ = ["Commands", "Registrar"]

Registrar = Callable[["argparse._SubParsersAction"], None]


@dataclass(frozen=True)
class Commands:
    """Frozen model for storage all sub-command registrars.

    Attributes:
        registrars:
            Tuple of callables, each adding its sub-commands to the parser.
    """

    registrars: tuple[Registrar, ...]

    def register_commands(self, subparsers: argparse._SubParsersAction) -> None:
        """Add every sub-command to ``subparsers``.

        Examples:
            For register commands, you **must** provide registrars to model.::

                >>> from app.internal.cli import v1
                >>> __commands__ = Commands(registrars=(v1.register,))

            Then every sub-command is available on the parser.::

                >>> import argparse
                >>> parser = argparse.ArgumentParser()
                >>> __commands__.register_commands(parser.add_subparsers())
        """

        for registrar in self.registrars:
            registrar(subparsers)
