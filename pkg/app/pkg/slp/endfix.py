"""Fixing the pattern's first and last letters on the grammar.

After the fix the pattern starts and ends with letters that later
compressions of the phase cannot merge with outside neighbours, so
every text occurrence keeps a single letter marking its start.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from app.pkg.logger import get_logger
from app.pkg.models.v1.app.enums import EndFixMode
from app.pkg.models.v1.exceptions import ContractViolation, PatternTooShort
from app.pkg.slp.core import (
    Item,
    Ref,
    Run,
    Slp,
    SymbolMeta,
    SymbolTable,
    compute_meta,
    item_letter,
    letter_at,
    live_letters,
    run_of,
    sat_add,
    sat_mul,
)
from app.pkg.slp.explicit import BlockTable, LeadingBlocks, MarkerBlocks, TrailingBlocks
from app.pkg.slp.recompress import (
    Partition,
    compress_partition_pairs,
    pattern_block_caps,
    pop,
    remove_crossing_blocks,
)

__all__ = [
    "EndFixPlan",
    "leading_block_length",
    "trailing_block_length",
    "plan_endfix",
    "fix_ends_slp",
    "assign_marker_weights",
    "finalize_power",
    "strip_text_prefix",
    "strip_text_suffix",
]

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class EndFixPlan:
    first: int
    last: int
    mode: EndFixMode
    leading: int
    trailing: int
    pattern_length: int
    fresh_from: int


def _boundary_block(
    slp: Slp,
    sym: int,
    letter: int,
    meta: Sequence[SymbolMeta],
    from_end: bool,
) -> int:
    total = 0
    rule = sym
    while True:
        body = slp.rules[rule]
        for item in reversed(body) if from_end else body:
            if isinstance(item, Ref):
                sub = meta[item.nt]
                if sub.length == 0:
                    continue
                if sub.uniform and sub.first == letter:
                    total = sat_add(total, sub.length)
                    continue
                if (sub.last if from_end else sub.first) == letter:
                    rule = item.nt
                    break
                return total
            if item_letter(item) != letter:
                return total
            total = sat_add(total, item.exponent if isinstance(item, Run) else 1)
        else:
            return total


def leading_block_length(slp: Slp, sym: int, letter: int, meta: Sequence[SymbolMeta]) -> int:
    """Length of the maximal ``letter`` block opening the value of ``sym``."""
    return _boundary_block(slp, sym, letter, meta, from_end=False)


def trailing_block_length(slp: Slp, sym: int, letter: int, meta: Sequence[SymbolMeta]) -> int:
    return _boundary_block(slp, sym, letter, meta, from_end=True)


def plan_endfix(slp: Slp, meta: Sequence[SymbolMeta] | None = None) -> EndFixPlan:
    meta = compute_meta(slp) if meta is None else meta
    pattern = meta[slp.pattern_axiom]
    if pattern.length < 2:
        raise PatternTooShort()
    first, last = pattern.first, pattern.last
    leading = leading_block_length(slp, slp.pattern_axiom, first, meta)
    trailing = trailing_block_length(slp, slp.pattern_axiom, last, meta)
    if pattern.uniform:
        mode = EndFixMode.PATTERN_IS_POWER
    elif first != last:
        mode = EndFixMode.DIFFERENT_BLOCK if leading > 1 else EndFixMode.DIFFERENT_PAIR
    else:
        mode = EndFixMode.SAME_LETTER
    return EndFixPlan(
        first=first,
        last=last,
        mode=EndFixMode(mode),
        leading=leading,
        trailing=trailing,
        pattern_length=pattern.length,
        fresh_from=slp.symbols.next_id,
    )


def assign_marker_weights(symbols: SymbolTable, plan: EndFixPlan) -> MarkerBlocks:
    """Block table for a pattern starting and ending with the same letter.

    The start marker weighs ``leading`` letters and the end marker nothing,
    so position sums stay exact.
    """
    return MarkerBlocks(symbols, plan.first, plan.leading, plan.trailing)


def _text_boundary(slp: Slp, from_end: bool) -> int | None:
    meta = compute_meta(slp)
    text = meta[slp.text_axiom]
    return text.last if from_end else text.first


def strip_text_prefix(slp: Slp, letter: int) -> bool:
    """Drop the first text letter if it is ``letter``; its weight is recorded."""
    if _text_boundary(slp, from_end=False) != letter:
        return False
    pop(slp, Partition(frozenset(), frozenset({letter})))
    body = slp.rules[slp.text_axiom]
    head = body[0]
    if item_letter(head) != letter:
        raise ContractViolation("text axiom does not start with the popped letter")
    body[0:1] = [run_of(letter, head.exponent - 1)] if isinstance(head, Run) else []
    slp.stripped_prefix_weight = sat_add(slp.stripped_prefix_weight, slp.symbols.weight(letter))
    return True


def strip_text_suffix(slp: Slp, letter: int) -> bool:
    if _text_boundary(slp, from_end=True) != letter:
        return False
    pop(slp, Partition(frozenset({letter}), frozenset()))
    body = slp.rules[slp.text_axiom]
    tail = body[-1]
    if item_letter(tail) != letter:
        raise ContractViolation("text axiom does not end with the popped letter")
    body[-1:] = [run_of(letter, tail.exponent - 1)] if isinstance(tail, Run) else []
    slp.stripped_suffix_weight = sat_add(slp.stripped_suffix_weight, slp.symbols.weight(letter))
    return True


def _rewrite_blocks(slp: Slp, table: BlockTable, boundary: tuple[int, int] | None = None) -> None:
    """Replace every block item of ``table.letter`` using ``table``.

    ``boundary`` gives the replacement letters of the pattern's own
    opening and closing blocks.
    """
    letter = table.letter
    for nt, body in enumerate(slp.rules):
        if not any(item_letter(item) == letter for item in body):
            continue
        out: list[Item] = []
        last_index = len(body) - 1
        for index, item in enumerate(body):
            if item_letter(item) != letter:
                out.append(item)
                continue
            if boundary is not None and nt == slp.pattern_axiom and index in (0, last_index):
                out.append(boundary[0] if index == 0 else boundary[1])
                continue
            out.extend(table.replace(item.exponent if isinstance(item, Run) else 1))
        slp.rules[nt] = out


def _cap(slp: Slp, letter: int) -> int | None:
    return pattern_block_caps(slp).get(letter)


def _pair(slp: Slp, a: int, b: int, counters: Counter) -> None:
    compress_partition_pairs(
        slp,
        Partition(frozenset({a}), frozenset({b})),
        lambda x, y: x == a and y == b,
        counters,
    )


def _fix_beginning(slp: Slp, plan: EndFixPlan, counters: Counter) -> None:
    first = plan.first
    if plan.mode == EndFixMode.DIFFERENT_PAIR:
        second = letter_at(slp, slp.pattern_axiom, 2, compute_meta(slp))
        _pair(slp, first, second, counters)
        return
    remove_crossing_blocks(slp, {first}, counters)
    table = LeadingBlocks(slp.symbols, first, plan.leading, _cap(slp, first))
    _rewrite_blocks(slp, table)
    strip_text_suffix(slp, table.marker)


def _fix_end(slp: Slp, plan: EndFixPlan, counters: Counter) -> None:
    meta = compute_meta(slp)
    pattern = slp.pattern_axiom
    length = meta[pattern].length
    if length < 2:
        return
    last = meta[pattern].last
    if last >= plan.fresh_from:
        return
    before = letter_at(slp, pattern, length - 1, meta)
    if before != last:
        _pair(slp, before, last, counters)
        return
    trailing = trailing_block_length(slp, pattern, last, meta)
    remove_crossing_blocks(slp, {last}, counters)
    table = TrailingBlocks(slp.symbols, last, trailing, _cap(slp, last))
    _rewrite_blocks(slp, table)
    strip_text_prefix(slp, table.marker)


def _compress_next_to(slp: Slp, marker: int, marker_on_left: bool, counters: Counter) -> None:
    others = frozenset(live_letters(slp)) - {marker}
    if marker_on_left:
        partition = Partition(frozenset({marker}), others)
        accept = lambda x, y: x == marker  # noqa: E731
    else:
        partition = Partition(others, frozenset({marker}))
        accept = lambda x, y: y == marker  # noqa: E731
    compress_partition_pairs(slp, partition, accept, counters)


def _fix_same(slp: Slp, plan: EndFixPlan, counters: Counter) -> None:
    letter = plan.first
    remove_crossing_blocks(slp, {letter}, counters)
    table = assign_marker_weights(slp.symbols, plan)
    table.cap = _cap(slp, letter)
    body = slp.rules[slp.pattern_axiom]
    if item_letter(body[0]) != letter or item_letter(body[-1]) != letter or len(body) < 2:
        raise ContractViolation("pattern boundary blocks are not explicit")
    _rewrite_blocks(slp, table, boundary=(table.left, table.right))
    strip_text_prefix(slp, table.right)
    strip_text_suffix(slp, table.left)

    _compress_next_to(slp, table.left, True, counters)
    _compress_next_to(slp, table.right, False, counters)
    if plan.trailing == 1 < plan.leading:
        _compress_next_to(slp, letter, True, counters)


def finalize_power(slp: Slp, plan: EndFixPlan, counters: Counter | None = None) -> int:
    """Resolve a pattern ``a^l`` in one step and return the hit letter.

    Every text block ``a^m`` with ``m >= l`` becomes ``h^(m-l+1) z``: one
    hit letter per occurrence and a filler carrying the remaining weight.
    The pattern becomes the single letter ``h``.
    """
    counters = Counter() if counters is None else counters
    letter, length = plan.first, plan.leading
    weight = slp.symbols.weight(letter)
    remove_crossing_blocks(slp, {letter}, counters)
    hit = slp.symbols.fresh(weight, origin=("block", letter, 1))
    filler = slp.symbols.fresh(sat_mul(length - 1, weight), origin=("block", letter, length - 1))
    in_text = slp.reachable([slp.text_axiom])
    for nt, body in enumerate(slp.rules):
        if not in_text[nt] or nt == slp.pattern_axiom:
            continue
        out: list[Item] = []
        for item in body:
            size = item.exponent if isinstance(item, Run) else 1
            if item_letter(item) == letter and size >= length:
                out.append(run_of(hit, size - length + 1))
                out.append(filler)
            else:
                out.append(item)
        slp.rules[nt] = out
    slp.rules[slp.pattern_axiom] = [hit]
    return hit


def fix_ends_slp(slp: Slp, plan: EndFixPlan, counters: Counter | None = None) -> Slp:
    """Apply ``plan``; the pattern's first letter afterwards is a fresh one."""
    counters = Counter() if counters is None else counters
    logger.debug(
        "Fixing pattern ends.",
        extra={"mode": str(plan.mode), "leading": plan.leading, "trailing": plan.trailing},
    )
    if plan.mode == EndFixMode.PATTERN_IS_POWER:
        finalize_power(slp, plan, counters)
    elif plan.mode == EndFixMode.SAME_LETTER:
        _fix_same(slp, plan, counters)
    else:
        _fix_beginning(slp, plan, counters)
        _fix_end(slp, plan, counters)
    return slp
