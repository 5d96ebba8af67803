"""Symbolic block lengths.

A block length is a common length plus a small offset. Common lengths
are created when a nonterminal derives a single-letter power or when two
lengths with non-zero commons are concatenated; explicit letters only
grow the offset. Before sorting, common lengths closer than ``g`` to a
kept one are folded onto it, which keeps offsets below ``2g`` and lets
lengths be sorted as ``(rank, offset)`` pairs.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from app.pkg.models.base import BaseEnum
from app.pkg.models.v1.app.stats import BlockLenStats
from app.pkg.models.v1.exceptions import ContractViolation
from app.pkg.slp.core import Ref, Run, Slp, sat_add
from app.pkg.slp.radix import radix_sort, radix_sort_ints

__all__ = [
    "CommonOrigin",
    "CommonLength",
    "ZERO",
    "BlockLen",
    "TooLongMarker",
    "LocatedBlock",
    "Thinning",
    "span_of",
    "mark_too_long",
    "collect_blocks",
    "build_block_lengths",
    "thin_commons",
    "sort_commons",
    "sort_block_lengths",
    "group_block_lengths",
]


class CommonOrigin(str, BaseEnum):
    ZERO = "zero"
    NONTERMINAL_BLOCK = "nonterminal-block"
    CONCATENATION = "concatenation"


@dataclass(eq=False, slots=True)
class CommonLength:
    """Shared base of block lengths; compared by identity."""

    value: int
    origin: CommonOrigin = field(default=CommonOrigin.NONTERMINAL_BLOCK)


ZERO = CommonLength(0, CommonOrigin.ZERO)


@dataclass(frozen=True, slots=True)
class BlockLen:
    common: CommonLength
    offset: int

    @property
    def value(self) -> int:
        return sat_add(self.common.value, self.offset)

    @classmethod
    def explicit(cls, count: int = 1) -> BlockLen:
        return cls(ZERO, count)

    @classmethod
    def nonterminal_block(cls, value: int) -> BlockLen:
        return cls(CommonLength(value, CommonOrigin.NONTERMINAL_BLOCK), 0)

    def concat(self, other: BlockLen) -> BlockLen:
        if self.common is not ZERO and other.common is not ZERO:
            return BlockLen(CommonLength(self.value + other.value, CommonOrigin.CONCATENATION), 0)
        common = other.common if self.common is ZERO else self.common
        return BlockLen(common, self.offset + other.offset)


class TooLongMarker(NamedTuple):
    """Block longer than every pattern block of its letter."""

    value: int


class LocatedBlock(NamedTuple):
    rule: int
    index: int
    length: BlockLen


def span_of(item: int | Run) -> BlockLen:
    """Block length of a letter or run item."""
    if isinstance(item, Run):
        return item.span if item.span is not None else BlockLen.nonterminal_block(item.exponent)
    return BlockLen.explicit(1)


def mark_too_long(length: BlockLen, cap: int) -> BlockLen | TooLongMarker:
    if length.value > cap:
        return TooLongMarker(length.value)
    return length


def collect_blocks(
    slp: Slp,
    eligible: Callable[[int], bool] | None = None,
    single: bool = False,
) -> dict[int, list[LocatedBlock]]:
    """Block items per letter; plain letters only with ``single``."""
    found: dict[int, list[LocatedBlock]] = {}
    for rule, body in enumerate(slp.rules):
        for index, item in enumerate(body):
            if isinstance(item, Ref) or (not single and not isinstance(item, Run)):
                continue
            letter = item.letter if isinstance(item, Run) else item
            if eligible is None or eligible(letter):
                found.setdefault(letter, []).append(LocatedBlock(rule, index, span_of(item)))
    return found


def build_block_lengths(slp: Slp, letter: int) -> list[LocatedBlock]:
    """Lengths of the ``letter`` blocks listed in rule bodies."""
    return collect_blocks(slp, lambda x: x == letter, single=True).get(letter, [])


@dataclass(slots=True)
class Thinning:
    """Kept commons, and for each dropped one its kept neighbours."""

    kept: list[CommonLength]
    moves: dict[CommonLength, tuple[CommonLength, CommonLength | None]]

    def rebase(self, length: BlockLen) -> BlockLen:
        move = self.moves.get(length.common)
        if move is None:
            return length
        lower, upper = move
        value = length.value
        if upper is not None and value >= upper.value:
            return BlockLen(upper, value - upper.value)
        return BlockLen(lower, value - lower.value)


def sort_commons(commons: Sequence[CommonLength]) -> list[CommonLength]:
    order = radix_sort_ints([common.value for common in commons])
    return [commons[index] for index in order]


def thin_commons(commons: Sequence[CommonLength], g: int) -> Thinning:
    """Keep commons pairwise more than ``g`` apart; ``commons`` sorted by value."""
    kept = [ZERO]
    lower_of: dict[CommonLength, int] = {}
    for common in commons:
        if common is ZERO:
            continue
        if common.value - kept[-1].value > g:
            kept.append(common)
        else:
            lower_of[common] = len(kept) - 1
    moves = {
        common: (kept[index], kept[index + 1] if index + 1 < len(kept) else None)
        for common, index in lower_of.items()
    }
    return Thinning(kept, moves)


def sort_block_lengths(lengths: Sequence[BlockLen]) -> list[list[int]]:
    """Indices of ``lengths`` grouped by value, groups in ascending order.

    Lengths must be thinned.
    """
    if not lengths:
        return []
    commons = list({id(length.common): length.common for length in lengths}.values())
    rank: dict[int, int] = {}
    current = -1
    previous: int | None = None
    for common in sort_commons(commons):
        if common.value != previous:
            current += 1
            previous = common.value
        rank[id(common)] = current
    max_offset = max(length.offset for length in lengths)
    order = radix_sort(
        range(len(lengths)),
        [lambda i: rank[id(lengths[i].common)], lambda i: lengths[i].offset],
        [len(commons), max_offset + 1],
    )
    groups: list[list[int]] = []
    last_key = None
    for index in order:
        key = (rank[id(lengths[index].common)], lengths[index].offset)
        if key != last_key:
            groups.append([])
            last_key = key
        groups[-1].append(index)
    return groups


def group_block_lengths(
    lengths: Sequence[BlockLen],
    g: int,
) -> tuple[list[list[int]], BlockLenStats]:
    """Thin, sort and group ``lengths``; equal values share one group."""
    if not lengths:
        return [], BlockLenStats(grammar_size=g)
    g = max(g, max(length.offset for length in lengths), 1)
    commons = list(
        {id(length.common): length.common for length in lengths if length.common is not ZERO}.values(),
    )
    thinning = thin_commons(sort_commons(commons), g)
    rebased = [thinning.rebase(length) for length in lengths]
    max_offset = max(length.offset for length in rebased)
    if max_offset > 2 * g:
        raise ContractViolation(f"offset {max_offset} exceeds 2g = {2 * g}")
    groups = sort_block_lengths(rebased)

    previous = -1
    for group in groups:
        value = rebased[group[0]].value
        if value <= previous or any(rebased[i].value != value for i in group):
            raise ContractViolation("block lengths out of order after thinning")
        previous = value

    stats = BlockLenStats(
        commons=len(commons),
        kept_commons=len(thinning.kept) - 1,
        offsets=sum(1 for length in lengths if length.offset),
        max_offset=max_offset,
        redirected_cost_bits=sum(common.value.bit_length() for common in commons),
        grammar_size=g,
    )
    return groups, stats
