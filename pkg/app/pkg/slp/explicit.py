"""Recompression on explicit letter sequences.

These run the same phases as the grammar engine on plain lists and
serve as a reference and as the ``--explicit`` path of the command line.
The block tables defined here are shared with :mod:`app.pkg.slp.endfix`.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field

from app.pkg.logger import get_logger
from app.pkg.models.v1.exceptions import (
    EmptyPattern,
    EqualLettersError,
    NotFreshLetterError,
    PatternTooShort,
)
from app.pkg.slp.core import SymbolTable, sat_mul
from app.pkg.slp.radix import radix_sort

__all__ = [
    "BlockTable",
    "PlainBlocks",
    "LeadingBlocks",
    "TrailingBlocks",
    "MarkerBlocks",
    "ExplicitInstance",
    "maximal_blocks",
    "pair_compress_explicit",
    "block_compress_explicit",
    "compress_blocks_explicit",
    "compress_pairs_explicit",
    "renumber_explicit",
    "set_phase",
    "set_equal",
    "fix_beginning_explicit",
    "fix_ends_explicit",
    "spm_phase",
    "spm_match",
]

logger = get_logger(__name__)


class BlockTable:
    """Maps the length of a maximal ``letter`` block to its replacement.

    Letters made for a given length are shared. Lengths above ``cap`` get
    a letter of their own, since no pattern block is that long.
    """

    def __init__(self, symbols: SymbolTable, letter: int, cap: int | None = None) -> None:
        self.symbols = symbols
        self.letter = letter
        self.weight = symbols.weight(letter)
        self.cap = cap
        self._shared: dict[tuple[str, int], int] = {}

    def _make(self, kind: str, length: int, count: int) -> int:
        key = (kind, length)
        unique = self.cap is not None and length > self.cap
        if not unique and key in self._shared:
            return self._shared[key]
        fresh = self.symbols.fresh(
            sat_mul(count, self.weight),
            origin=("block", self.letter, count),
        )
        if not unique:
            self._shared[key] = fresh
        return fresh

    def plain(self, length: int) -> list[int]:
        if length == 1:
            return [self.letter]
        return [self._make("block", length, length)]

    def replace(self, length: int) -> list[int]:
        return self.plain(length)


class PlainBlocks(BlockTable):
    pass


class LeadingBlocks(BlockTable):
    """Pattern starts with ``letter^leading`` followed by another letter."""

    def __init__(self, symbols: SymbolTable, letter: int, leading: int, cap: int | None = None):
        super().__init__(symbols, letter, cap)
        self.leading = leading
        self.marker = self._make("block", leading, leading)

    def replace(self, length: int) -> list[int]:
        if length < self.leading:
            return self.plain(length)
        if length == self.leading:
            return [self.marker]
        return [self._make("excess", length, length - self.leading), self.marker]


class TrailingBlocks(BlockTable):
    """Pattern ends with ``letter^trailing`` preceded by another letter."""

    def __init__(self, symbols: SymbolTable, letter: int, trailing: int, cap: int | None = None):
        super().__init__(symbols, letter, cap)
        self.trailing = trailing
        self.marker = self._make("block", trailing, trailing)

    def replace(self, length: int) -> list[int]:
        if length < self.trailing:
            return self.plain(length)
        if length == self.trailing:
            return [self.marker]
        return [self.marker, self._make("excess", length, length - self.trailing)]


class MarkerBlocks(BlockTable):
    """Pattern starts with ``letter^leading`` and ends with ``letter^trailing``.

    A block long enough to end an occurrence gets ``right`` (weight 0) in
    front and one long enough to start an occurrence gets ``left``
    (weight ``leading`` letters) at its end. The pattern's own boundary
    blocks become a single ``left`` and a single ``right``.
    """

    def __init__(
        self,
        symbols: SymbolTable,
        letter: int,
        leading: int,
        trailing: int,
        cap: int | None = None,
    ):
        super().__init__(symbols, letter, cap)
        self.leading = leading
        self.trailing = trailing
        self.left = symbols.fresh(sat_mul(leading, self.weight), origin=("block", letter, leading))
        self.right = symbols.fresh(0, origin=("block", letter, 0))

    def excess(self, length: int) -> int:
        return self._make("excess", length, length - self.leading)

    def replace(self, length: int) -> list[int]:
        leading, trailing = self.leading, self.trailing
        if length < min(leading, trailing):
            return self.plain(length)
        if leading == trailing:
            if length == leading:
                return [self.right, self.left]
            return [self.right, self.excess(length), self.left]
        if leading < trailing:
            if length == leading:
                return [self.left]
            if length < trailing:
                return [self.excess(length), self.left]
            return [self.right, self.excess(length), self.left]
        if length < leading:
            return [self.right, *self.plain(length)]
        if length == leading:
            return [self.right, self.left]
        return [self.right, self.excess(length), self.left]


@dataclass
class ExplicitInstance:
    """Pattern and text as letter lists over one symbol table."""

    pattern: list[int]
    text: list[int]
    symbols: SymbolTable
    stripped_prefix_weight: int = 0
    stripped_suffix_weight: int = 0
    phases: int = field(default=0)

    @classmethod
    def from_sequences(cls, pattern: Sequence[int], text: Sequence[int]) -> ExplicitInstance:
        size = max([*pattern, *text], default=-1) + 1
        return cls(list(pattern), list(text), SymbolTable.uniform(size))

    def sequences(self) -> tuple[list[int], list[int]]:
        return self.pattern, self.text


def maximal_blocks(letters: Sequence[int]) -> Iterator[tuple[int, int, int]]:
    """``(start, letter, length)`` of every maximal block."""
    start = 0
    while start < len(letters):
        stop = start + 1
        while stop < len(letters) and letters[stop] == letters[start]:
            stop += 1
        yield start, letters[start], stop - start
        start = stop


def pair_compress_explicit(letters: Sequence[int], a: int, b: int, c: int) -> list[int]:
    """Replace every occurrence of ``ab`` by ``c``."""
    if a == b:
        raise EqualLettersError()
    if c in letters:
        raise NotFreshLetterError(f"letter {c} occurs in the sequence")
    out: list[int] = []
    i = 0
    while i < len(letters):
        if letters[i] == a and i + 1 < len(letters) and letters[i + 1] == b:
            out.append(c)
            i += 2
        else:
            out.append(letters[i])
            i += 1
    return out


def _rewrite_blocks(
    letters: Sequence[int],
    letter: int,
    replace: Callable[[int, int, int], list[int]],
) -> list[int]:
    out: list[int] = []
    for start, found, length in maximal_blocks(letters):
        if found == letter:
            out.extend(replace(start, length, len(letters)))
        else:
            out.extend([found] * length)
    return out


def block_compress_explicit(
    letters: Sequence[int],
    a: int,
    symbols: SymbolTable | None = None,
    table: BlockTable | None = None,
) -> list[int]:
    """Replace every maximal ``a`` block of length >= 2 by a letter for its length."""
    if table is None:
        if symbols is None:
            symbols = SymbolTable.uniform(max(letters, default=a) + 1)
        table = PlainBlocks(symbols, a)
    return _rewrite_blocks(letters, a, lambda start, length, size: table.replace(length))


def compress_blocks_explicit(instance: ExplicitInstance, fresh_from: int) -> None:
    """Compress blocks of every letter below ``fresh_from`` in both sequences."""
    shared: dict[tuple[int, int], int] = {}
    for name in ("pattern", "text"):
        out: list[int] = []
        for _, letter, length in maximal_blocks(getattr(instance, name)):
            if length == 1 or letter >= fresh_from:
                out.extend([letter] * length)
                continue
            if (letter, length) not in shared:
                shared[(letter, length)] = instance.symbols.fresh(
                    sat_mul(length, instance.symbols.weight(letter)),
                    origin=("block", letter, length),
                )
            out.append(shared[(letter, length)])
        setattr(instance, name, out)


def _compress_pairs(
    instance: ExplicitInstance,
    accept: Callable[[int, int], bool],
) -> int:
    records = []
    sequences = instance.sequences()
    for which, letters in enumerate(sequences):
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if a != b and accept(a, b):
                records.append((a, b, which, i))
    if not records:
        return 0

    size = instance.symbols.next_id
    records = radix_sort(records, [lambda r: r[0], lambda r: r[1]], [size, size])
    work: list[list[int | None]] = [list(letters) for letters in sequences]
    made = 0
    current = None
    letter = None
    for a, b, which, i in records:
        if (a, b) != current:
            current, letter = (a, b), None
        letters = work[which]
        if letters[i] == a and letters[i + 1] == b:
            if letter is None:
                letter = instance.symbols.fresh(
                    instance.symbols.weight(a) + instance.symbols.weight(b),
                    origin=("pair", a, b),
                )
                made += 1
            letters[i] = letter
            letters[i + 1] = None
    instance.pattern = [x for x in work[0] if x is not None]
    instance.text = [x for x in work[1] if x is not None]
    return made


def compress_pairs_explicit(instance: ExplicitInstance, fresh_from: int) -> int:
    """Compress every pair of different letters below ``fresh_from``."""
    return _compress_pairs(instance, lambda a, b: a < fresh_from and b < fresh_from)


def renumber_explicit(instance: ExplicitInstance) -> None:
    live = sorted(set(instance.pattern) | set(instance.text))
    mapping = {old: new for new, old in enumerate(live)}
    instance.pattern = [mapping[x] for x in instance.pattern]
    instance.text = [mapping[x] for x in instance.text]
    instance.symbols = SymbolTable(
        [instance.symbols.weight(x) for x in live],
        {mapping[k]: v for k, v in instance.symbols.labels.items() if k in mapping},
    )


def set_phase(instance: ExplicitInstance) -> int:
    """Compress blocks, then pairs, of the letters present at phase start.

    Returns the first letter id made in the phase.
    """
    fresh_from = instance.symbols.next_id
    compress_blocks_explicit(instance, fresh_from)
    compress_pairs_explicit(instance, fresh_from)
    instance.phases += 1
    return fresh_from


def set_equal(s1: Sequence[int], s2: Sequence[int]) -> bool:
    """Equality test running phases until one side has one letter left."""
    instance = ExplicitInstance.from_sequences(s1, s2)
    while len(instance.pattern) > 1 and len(instance.text) > 1:
        set_phase(instance)
        renumber_explicit(instance)
    return instance.pattern == instance.text


def _leading(letters: Sequence[int]) -> int:
    return next(length for _, _, length in maximal_blocks(letters))


def _trailing(letters: Sequence[int]) -> int:
    return _leading(letters[::-1])


def _pair(instance: ExplicitInstance, a: int, b: int) -> None:
    _compress_pairs(instance, lambda x, y: x == a and y == b)


def _strip_prefix(instance: ExplicitInstance, letter: int) -> None:
    if instance.text and instance.text[0] == letter:
        instance.stripped_prefix_weight += instance.symbols.weight(letter)
        instance.text = instance.text[1:]


def _strip_suffix(instance: ExplicitInstance, letter: int) -> None:
    if instance.text and instance.text[-1] == letter:
        instance.stripped_suffix_weight += instance.symbols.weight(letter)
        instance.text = instance.text[:-1]


def _apply(instance: ExplicitInstance, table: BlockTable) -> None:
    for name in ("pattern", "text"):
        letters = getattr(instance, name)
        setattr(
            instance,
            name,
            _rewrite_blocks(letters, table.letter, lambda start, length, size: table.replace(length)),
        )


def fix_beginning_explicit(instance: ExplicitInstance, fresh_from: int | None = None) -> None:
    """Make the first pattern letter one that cannot extend to the left.

    The first letter must differ from the last one.
    """
    pattern = instance.pattern
    first = pattern[0]
    if pattern[1] != first:
        _pair(instance, first, pattern[1])
        return
    table = LeadingBlocks(instance.symbols, first, _leading(pattern))
    _apply(instance, table)
    _strip_suffix(instance, table.marker)


def _fix_end(instance: ExplicitInstance, fresh_from: int) -> None:
    pattern = instance.pattern
    if len(pattern) < 2 or pattern[-1] >= fresh_from:
        return
    last = pattern[-1]
    if pattern[-2] != last:
        _pair(instance, pattern[-2], last)
        return
    table = TrailingBlocks(instance.symbols, last, _trailing(pattern))
    _apply(instance, table)
    _strip_prefix(instance, table.marker)


def _fix_same(instance: ExplicitInstance) -> None:
    pattern = instance.pattern
    letter = pattern[0]
    leading, trailing = _leading(pattern), _trailing(pattern)
    table = MarkerBlocks(instance.symbols, letter, leading, trailing)

    def pattern_block(start: int, length: int, size: int) -> list[int]:
        if start == 0:
            return [table.left]
        if start + length == size:
            return [table.right]
        return table.replace(length)

    instance.pattern = _rewrite_blocks(pattern, letter, pattern_block)
    instance.text = _rewrite_blocks(
        instance.text,
        letter,
        lambda start, length, size: table.replace(length),
    )
    _strip_prefix(instance, table.right)
    _strip_suffix(instance, table.left)

    _compress_pairs(instance, lambda x, y: x == table.left)
    _compress_pairs(instance, lambda x, y: y == table.right)
    if trailing == 1 < leading:
        _compress_pairs(instance, lambda x, y: x == letter)


def _mark_power(instance: ExplicitInstance) -> None:
    letter = instance.pattern[0]
    length = len(instance.pattern)
    weight = instance.symbols.weight(letter)
    hit = instance.symbols.fresh(weight, origin=("block", letter, 1))
    filler = instance.symbols.fresh(sat_mul(length - 1, weight), origin=("block", letter, length - 1))

    def mark(start: int, size: int, total: int) -> list[int]:
        if size < length:
            return [letter] * size
        return [hit] * (size - length + 1) + [filler]

    instance.text = _rewrite_blocks(instance.text, letter, mark)
    instance.pattern = [hit]


def fix_ends_explicit(instance: ExplicitInstance, fresh_from: int | None = None) -> None:
    """Fix both pattern ends so occurrences cannot be split by compression.

    A pattern that is a single-letter power is resolved at once: every
    long enough text block becomes one hit letter per occurrence.
    """
    if len(instance.pattern) < 2:
        raise PatternTooShort()
    fresh_from = instance.symbols.next_id if fresh_from is None else fresh_from
    pattern = instance.pattern
    if all(letter == pattern[0] for letter in pattern):
        _mark_power(instance)
    elif pattern[0] == pattern[-1]:
        _fix_same(instance)
    else:
        fix_beginning_explicit(instance, fresh_from)
        _fix_end(instance, fresh_from)


def spm_phase(instance: ExplicitInstance) -> int:
    """One matching phase; returns the first letter id made in it."""
    fresh_from = instance.symbols.next_id
    fix_ends_explicit(instance, fresh_from)
    if len(instance.pattern) > 1:
        compress_blocks_explicit(instance, fresh_from)
        compress_pairs_explicit(instance, fresh_from)
    instance.phases += 1
    return fresh_from


def spm_match(pattern: Sequence[int], text: Sequence[int]) -> list[int]:
    """1-based start positions of ``pattern`` in ``text``."""
    if not pattern:
        raise EmptyPattern()
    instance = ExplicitInstance.from_sequences(pattern, text)
    while len(instance.pattern) > 1:
        if len(instance.pattern) > len(instance.text):
            return []
        spm_phase(instance)
        renumber_explicit(instance)
    logger.debug("Explicit match finished.", extra={"phases": instance.phases})

    hit = instance.pattern[0]
    positions = []
    position = instance.stripped_prefix_weight + 1
    for letter in instance.text:
        if letter == hit:
            positions.append(position)
        position += instance.symbols.weight(letter)
    return positions
