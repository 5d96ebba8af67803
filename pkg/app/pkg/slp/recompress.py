"""Pair and block compression on rule bodies.

A pair or block is *crossing* when some occurrence of it spans a
nonterminal boundary. Non-crossing pairs are replaced directly in the
bodies. Crossing ones are first made explicit by popping letters out of
nonterminals: :func:`pop` for pairs, :func:`remove_crossing_blocks` for
blocks.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from app.pkg.logger import get_logger
from app.pkg.models.v1.app.stats import BlockLenStats
from app.pkg.models.v1.exceptions import ContractViolation
from app.pkg.slp.blocklen import (
    BlockLen,
    TooLongMarker,
    collect_blocks,
    group_block_lengths,
    mark_too_long,
    span_of,
)
from app.pkg.slp.core import (
    Item,
    Ref,
    Run,
    Slp,
    SymbolMeta,
    compute_meta,
    item_letter,
    live_letters,
    run_of,
    sat_add,
    sat_mul,
)
from app.pkg.slp.radix import radix_sort

__all__ = [
    "Partition",
    "PairRecord",
    "PairScan",
    "scan_pairs",
    "explicit_pair_records",
    "compress_noncrossing",
    "pop",
    "remove_crossing_blocks",
    "merge_runs",
    "pattern_block_caps",
    "compress_blocks",
    "pattern_multiplicities",
    "count_pattern_pair_occurrences",
    "count_grammar_pair_occurrences",
    "greedy_partition",
    "greedy_partition_grammar",
    "split_covered_runs",
    "compress_partition_pairs",
    "compress_crossing_greedy",
    "compress_crossing_binary",
    "binary_groups",
]

logger = get_logger(__name__)

_GAP = object()


@dataclass(frozen=True, slots=True)
class Partition:
    """Disjoint letter sets; pairs ``ab`` with ``a`` left and ``b`` right are covered."""

    left: frozenset[int]
    right: frozenset[int]

    def __post_init__(self) -> None:
        if self.left & self.right:
            raise ContractViolation(f"letters on both sides: {sorted(self.left & self.right)}")

    def covers(self, a: int, b: int) -> bool:
        return a in self.left and b in self.right

    def swapped(self) -> Partition:
        return Partition(self.right, self.left)


class PairRecord(NamedTuple):
    """Pair of different letters found next to each other in a body.

    ``occurrence`` is ``(rule, index)`` of the first letter when both are
    plain letter items of the same body.
    """

    a: int
    b: int
    crossing: bool
    occurrence: tuple[int, int] | None = None


@dataclass(slots=True)
class PairScan:
    noncrossing: list[PairRecord] = field(default_factory=list)
    crossing: set[tuple[int, int]] = field(default_factory=set)


def _first(item: Item, meta: Sequence[SymbolMeta]) -> int | None:
    return meta[item.nt].first if isinstance(item, Ref) else item_letter(item)


def _last(item: Item, meta: Sequence[SymbolMeta]) -> int | None:
    return meta[item.nt].last if isinstance(item, Ref) else item_letter(item)


def _neighbours(body: list[Item], meta: Sequence[SymbolMeta]):
    """Adjacent non-empty items of ``body`` as ``(index, left, right)``."""
    previous = None
    previous_index = -1
    for index, item in enumerate(body):
        if isinstance(item, Ref) and meta[item.nt].length == 0:
            continue
        if previous is not None:
            yield previous_index, previous, item
        previous, previous_index = item, index


def scan_pairs(slp: Slp, meta: Sequence[SymbolMeta] | None = None) -> PairScan:
    """Classify every pair of different letters as crossing or not.

    Non-crossing records come sorted by pair.
    """
    meta = compute_meta(slp) if meta is None else meta
    records: list[PairRecord] = []
    for rule, body in enumerate(slp.rules):
        for index, left, right in _neighbours(body, meta):
            a, b = _last(left, meta), _first(right, meta)
            if a == b:
                continue
            if isinstance(left, Ref) or isinstance(right, Ref):
                records.append(PairRecord(a, b, True))
            else:
                records.append(PairRecord(a, b, False, (rule, index)))

    size = slp.symbols.next_id
    records = radix_sort(
        records,
        [lambda r: r.a, lambda r: r.b, lambda r: 0 if r.crossing else 1],
        [size, size, 2],
    )
    scan = PairScan()
    group_crossing = False
    current = None
    for record in records:
        pair = (record.a, record.b)
        if pair != current:
            current = pair
            group_crossing = record.crossing
            if group_crossing:
                scan.crossing.add(pair)
        if not group_crossing:
            scan.noncrossing.append(record)
    return scan


def explicit_pair_records(
    slp: Slp,
    accept: Callable[[int, int], bool],
) -> list[PairRecord]:
    """Records of accepted pairs standing as two letter items in one body."""
    records = []
    for rule, body in enumerate(slp.rules):
        for index in range(len(body) - 1):
            a, b = body[index], body[index + 1]
            if type(a) is int and type(b) is int and a != b and accept(a, b):
                records.append(PairRecord(a, b, False, (rule, index)))
    return records


def compress_noncrossing(
    slp: Slp,
    records: Iterable[PairRecord],
    counters: Counter | None = None,
) -> Slp:
    """Replace the recorded pair occurrences; one fresh letter per pair.

    Records whose occurrence no longer holds both letters are skipped.
    """
    counters = Counter() if counters is None else counters
    symbols = slp.symbols
    made: dict[tuple[int, int], int] = {}
    touched: set[int] = set()
    for record in records:
        if record.occurrence is None:
            continue
        rule, index = record.occurrence
        body = slp.rules[rule]
        if index + 1 >= len(body):
            continue
        a, b = body[index], body[index + 1]
        if type(a) is not int or type(b) is not int or a != record.a or b != record.b:
            continue
        pair = (record.a, record.b)
        if pair not in made:
            made[pair] = symbols.fresh(
                sat_add(symbols.weight(record.a), symbols.weight(record.b)),
                origin=("pair", record.a, record.b),
            )
            counters["pairs"] += 1
        body[index] = made[pair]
        body[index + 1] = _GAP
        touched.add(rule)
    for rule in touched:
        slp.rules[rule] = [item for item in slp.rules[rule] if item is not _GAP]
    return slp


def _expand(
    body: list[Item],
    prefix: list[list[Item] | None],
    suffix: list[list[Item] | None],
    empty: list[bool],
) -> tuple[list[Item], int]:
    out: list[Item] = []
    added = 0
    for item in body:
        if not isinstance(item, Ref):
            out.append(item)
            continue
        nt = item.nt
        if prefix[nt]:
            out.extend(prefix[nt])
            added += len(prefix[nt])
        if not empty[nt]:
            out.append(item)
        if suffix[nt]:
            out.extend(suffix[nt])
            added += len(suffix[nt])
    return out, added


def _take_first(item: Item) -> tuple[int, list[Item]]:
    if isinstance(item, Run):
        return item.letter, [run_of(item.letter, item.exponent - 1)]
    return item, []


def pop(slp: Slp, partition: Partition, counters: Counter | None = None) -> Slp:
    """Make every occurrence of a covered pair explicit.

    Rules are visited bottom-up. A nonterminal starting with a right
    letter loses that letter and a nonterminal ending with a left letter
    loses that one; both are reinserted around every reference. Axioms
    keep their letters. Emptied nonterminals disappear from the bodies.
    """
    counters = Counter() if counters is None else counters
    count = len(slp.rules)
    prefix: list[list[Item] | None] = [None] * count
    suffix: list[list[Item] | None] = [None] * count
    empty = [False] * count
    axioms = slp.axioms
    for nt in range(count):
        body, added = _expand(slp.rules[nt], prefix, suffix, empty)
        counters["popped"] += added
        slp.rules[nt] = body
        if nt in axioms or not body:
            empty[nt] = not body
            continue
        if not isinstance(body[0], Ref) and item_letter(body[0]) in partition.right:
            letter, rest = _take_first(body[0])
            body[0:1] = rest
            prefix[nt] = [letter]
        if body and not isinstance(body[-1], Ref) and item_letter(body[-1]) in partition.left:
            letter, rest = _take_first(body[-1])
            body[-1:] = rest
            suffix[nt] = [letter]
        empty[nt] = not body
    return slp


def _fold(items: list[int | Run]) -> tuple[int, BlockLen]:
    exponent = 0
    span: BlockLen | None = None
    for item in items:
        exponent = sat_add(exponent, item.exponent if isinstance(item, Run) else 1)
        piece = span_of(item)
        span = piece if span is None else span.concat(piece)
    return exponent, span


def remove_crossing_blocks(
    slp: Slp,
    letters: Iterable[int] | None = None,
    counters: Counter | None = None,
) -> Slp:
    """Make every maximal block of ``letters`` (all by default) one body item.

    Each nonterminal hands its leading and trailing single-letter blocks up
    to the rules using it, as runs carrying symbolic lengths. Finishes with
    :func:`merge_runs`.
    """
    counters = Counter() if counters is None else counters
    selected = None if letters is None else frozenset(letters)
    count = len(slp.rules)
    prefix: list[list[Item] | None] = [None] * count
    suffix: list[list[Item] | None] = [None] * count
    empty = [False] * count
    axioms = slp.axioms

    def wanted(item: Item) -> int | None:
        letter = item_letter(item)
        if letter is None or (selected is not None and letter not in selected):
            return None
        return letter

    for nt in range(count):
        body, added = _expand(slp.rules[nt], prefix, suffix, empty)
        counters["popped"] += added
        slp.rules[nt] = body
        if nt in axioms or not body:
            empty[nt] = not body
            continue

        lead = wanted(body[0])
        if lead is not None:
            size = 0
            while size < len(body) and item_letter(body[size]) == lead:
                size += 1
            exponent, span = _fold(body[:size])
            del body[:size]
            if not body:
                span = BlockLen.nonterminal_block(exponent)
            prefix[nt] = [run_of(lead, exponent, span)]
        if body:
            tail = wanted(body[-1])
            if tail is not None:
                size = 0
                while size < len(body) and item_letter(body[len(body) - 1 - size]) == tail:
                    size += 1
                exponent, span = _fold(body[len(body) - size :])
                del body[len(body) - size :]
                suffix[nt] = [run_of(tail, exponent, span)]
        empty[nt] = not body
    return merge_runs(slp)


def merge_runs(slp: Slp) -> Slp:
    """Merge adjacent letter and run items of the same letter."""
    for nt, body in enumerate(slp.rules):
        if not any(
            not isinstance(body[i], Ref) and item_letter(body[i]) == item_letter(body[i + 1])
            for i in range(len(body) - 1)
        ):
            continue
        merged: list[Item] = []
        pending: list[int | Run] = []
        for item in [*body, None]:
            if pending and (item is None or isinstance(item, Ref) or item_letter(item) != item_letter(pending[0])):
                if len(pending) == 1:
                    merged.append(pending[0])
                else:
                    exponent, span = _fold(pending)
                    merged.append(run_of(item_letter(pending[0]), exponent, span))
                pending = []
            if item is None:
                break
            if isinstance(item, Ref):
                merged.append(item)
            else:
                pending.append(item)
        slp.rules[nt] = merged
    return slp


def pattern_block_caps(slp: Slp) -> dict[int, int]:
    """Longest block item per letter among rules reachable from the pattern."""
    reachable = slp.reachable([slp.pattern_axiom])
    caps: dict[int, int] = {}
    for nt, body in enumerate(slp.rules):
        if not reachable[nt]:
            continue
        for item in body:
            if isinstance(item, Ref):
                continue
            letter = item_letter(item)
            size = item.exponent if isinstance(item, Run) else 1
            caps[letter] = max(caps.get(letter, 0), size)
    return caps


def _check_blocks(slp: Slp, meta: Sequence[SymbolMeta], eligible: Callable[[int], bool]) -> None:
    for nt, body in enumerate(slp.rules):
        for _, left, right in _neighbours(body, meta):
            a, b = _last(left, meta), _first(right, meta)
            if a == b and eligible(a):
                raise ContractViolation(f"block of letter {a} is split in rule {nt}")


def compress_blocks(
    slp: Slp,
    cap_table: dict[int, int],
    eligible: Callable[[int], bool] | None = None,
    counters: Counter | None = None,
) -> BlockLenStats:
    """Replace every block item of an eligible letter by a fresh letter.

    Blocks of equal length share a letter when the pattern has a block of
    that letter at least as long; other blocks get letters of their own.
    """
    counters = Counter() if counters is None else counters
    eligible = eligible or (lambda letter: True)
    _check_blocks(slp, compute_meta(slp), eligible)
    symbols = slp.symbols
    stats = BlockLenStats(grammar_size=slp.grammar_size)
    for letter, blocks in sorted(collect_blocks(slp, eligible).items()):
        weight = symbols.weight(letter)
        cap = cap_table.get(letter)
        sortable: list[tuple[int, int, BlockLen]] = []
        for rule, index, length in blocks:
            if cap is None or isinstance(mark_too_long(length, cap), TooLongMarker):
                slp.rules[rule][index] = symbols.fresh(
                    sat_mul(length.value, weight),
                    origin=("block", letter, length.value),
                )
                counters["blocks"] += 1
            else:
                sortable.append((rule, index, length))
        groups, letter_stats = group_block_lengths(
            [length for _, _, length in sortable],
            slp.grammar_size,
        )
        stats = stats.merge(letter_stats)
        for group in groups:
            value = sortable[group[0]][2].value
            fresh = symbols.fresh(sat_mul(value, weight), origin=("block", letter, value))
            counters["blocks"] += 1
            for position in group:
                rule, index, _ = sortable[position]
                slp.rules[rule][index] = fresh
    return stats


def pattern_multiplicities(slp: Slp) -> list[int]:
    """How many times each nonterminal occurs in the pattern's derivation tree."""
    count = [0] * len(slp.rules)
    count[slp.pattern_axiom] = 1
    for nt in range(len(slp.rules) - 1, -1, -1):
        if not count[nt]:
            continue
        for item in slp.rules[nt]:
            if isinstance(item, Ref):
                count[item.nt] = sat_add(count[item.nt], count[nt])
    return count


def _count_pairs(
    slp: Slp,
    weights: Sequence[int],
    pairs: set[tuple[int, int]] | None,
) -> dict[tuple[int, int], int]:
    meta = compute_meta(slp)
    counts: dict[tuple[int, int], int] = defaultdict(int)
    for nt, body in enumerate(slp.rules):
        if not weights[nt]:
            continue
        for _, left, right in _neighbours(body, meta):
            pair = (_last(left, meta), _first(right, meta))
            if pair[0] != pair[1] and (pairs is None or pair in pairs):
                counts[pair] = sat_add(counts[pair], weights[nt])
    return dict(counts)


def count_pattern_pair_occurrences(
    slp: Slp,
    pairs: set[tuple[int, int]] | None = None,
) -> dict[tuple[int, int], int]:
    """Occurrences of each pair in the pattern value, counted through the rules."""
    return _count_pairs(slp, pattern_multiplicities(slp), pairs)


def count_grammar_pair_occurrences(
    slp: Slp,
    pairs: set[tuple[int, int]] | None = None,
) -> dict[tuple[int, int], int]:
    """Rules in which each pair appears between neighbouring items."""
    return _count_pairs(slp, [1] * len(slp.rules), pairs)


def greedy_partition(
    counts: dict[tuple[int, int], int],
    alphabet: Iterable[int] | None = None,
) -> Partition:
    """Partition covering at least a quarter of the counted occurrences.

    Letters are placed one by one on the side opposite to most of their
    already placed neighbours; the orientation covering more wins.
    """
    neighbours: dict[int, Counter] = defaultdict(Counter)
    for (a, b), k in counts.items():
        neighbours[a][b] += k
        neighbours[b][a] += k
    towards_left: Counter = Counter()
    towards_right: Counter = Counter()
    left: set[int] = set()
    right: set[int] = set()
    for letter in sorted(neighbours):
        if towards_right[letter] >= towards_left[letter]:
            left.add(letter)
            side = towards_left
        else:
            right.add(letter)
            side = towards_right
        for other, k in neighbours[letter].items():
            side[other] += k

    forward = sum(k for (a, b), k in counts.items() if a in left and b in right)
    backward = sum(k for (a, b), k in counts.items() if a in right and b in left)
    if backward > forward:
        left, right = right, left
    if alphabet is not None:
        left |= set(alphabet) - right - left
    return Partition(frozenset(left), frozenset(right))


def greedy_partition_grammar(
    slp: Slp,
    crossing: set[tuple[int, int]] | None = None,
    alphabet: Iterable[int] | None = None,
) -> Partition:
    if crossing is None:
        crossing = scan_pairs(slp).crossing
    return greedy_partition(count_grammar_pair_occurrences(slp, crossing), alphabet)


def split_covered_runs(slp: Slp, covered: Callable[[int, int], bool]) -> Slp:
    """Split a letter off every run whose end meets a covered pair.

    ``Run(a, k), b`` becomes ``Run(a, k - 1), a, b`` when ``covered(a, b)``;
    the start of a run is split the same way.
    """
    for nt, body in enumerate(slp.rules):
        if not any(isinstance(item, Run) for item in body):
            continue
        out: list[Item] = []
        for index, item in enumerate(body):
            if not isinstance(item, Run):
                out.append(item)
                continue
            letter = item.letter
            before = item_letter(body[index - 1]) if index > 0 else None
            after = item_letter(body[index + 1]) if index + 1 < len(body) else None
            head = before is not None and covered(before, letter)
            tail = after is not None and covered(letter, after)
            if not head and not tail:
                out.append(item)
                continue
            rest = item.exponent - head - tail
            if head:
                out.append(letter)
            if rest:
                out.append(run_of(letter, rest))
            if tail:
                out.append(letter)
        slp.rules[nt] = out
    return slp


def compress_partition_pairs(
    slp: Slp,
    partition: Partition,
    accept: Callable[[int, int], bool] | None = None,
    counters: Counter | None = None,
) -> Slp:
    """Pop for ``partition``, then compress the covered pairs ``accept`` admits."""
    if not partition.left or not partition.right:
        return slp

    def covered(a: int, b: int) -> bool:
        return partition.covers(a, b) and (accept is None or accept(a, b))

    pop(slp, partition, counters)
    split_covered_runs(slp, covered)
    return compress_noncrossing(slp, explicit_pair_records(slp, covered), counters)


def compress_crossing_greedy(
    slp: Slp,
    crossing: set[tuple[int, int]],
    counters: Counter | None = None,
) -> Slp:
    """Two greedy rounds: one weighted by the pattern, one by the rules."""
    if not crossing:
        return slp
    alphabet = live_letters(slp)
    by_pattern = greedy_partition(count_pattern_pair_occurrences(slp, crossing), alphabet)
    by_rules = greedy_partition(count_grammar_pair_occurrences(slp, crossing), alphabet)
    for partition in (by_pattern, by_rules):
        compress_partition_pairs(slp, partition, lambda a, b: (a, b) in crossing, counters)
    return slp


def binary_groups(crossing: Iterable[tuple[int, int]]) -> dict[int, set[tuple[int, int]]]:
    """Group pairs by the lowest bit where the letters differ and that bit of ``a``."""
    groups: dict[int, set[tuple[int, int]]] = defaultdict(set)
    for a, b in crossing:
        bit = ((a ^ b) & -(a ^ b)).bit_length() - 1
        groups[2 * bit + (a >> bit & 1)].add((a, b))
    return dict(groups)


def compress_crossing_binary(
    slp: Slp,
    crossing: set[tuple[int, int]],
    counters: Counter | None = None,
) -> Slp:
    """One round per non-empty bit group; each covers every pair of its group."""
    for group, pairs in sorted(binary_groups(crossing).items()):
        bit, side = divmod(group, 2)
        live = live_letters(slp)
        left = frozenset(x for x in live if (x >> bit & 1) == side)
        right = frozenset(live) - left
        logger.debug(
            "Binary round.",
            extra={"bit": bit, "side": side, "pairs": len(pairs)},
        )
        compress_partition_pairs(
            slp,
            Partition(left, right),
            lambda a, b, pairs=pairs: (a, b) in pairs,
            counters,
        )
    return slp
