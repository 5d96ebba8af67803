"""Enumerations shared by the engine and the command line."""

from app.pkg.models.base import BaseEnum

__all__ = ["Strategy", "EndFixMode", "Which"]


class Strategy(str, BaseEnum):
    """Schedule used to compress crossing pairs."""

    #: Two greedy partitions, one weighted by pattern occurrences, one by rules.
    GREEDY = "greedy"
    #: One partition per bit of the letter ids, in both orientations.
    BINARY = "binary"


class EndFixMode(str, BaseEnum):
    """How the first and last pattern letters get fixed in a phase."""

    DIFFERENT_PAIR = "different-pair"
    DIFFERENT_BLOCK = "different-block"
    SAME_LETTER = "same-letter"
    PATTERN_IS_POWER = "pattern-is-power"


class Which(str, BaseEnum):
    FIRST = "first"
    LAST = "last"
