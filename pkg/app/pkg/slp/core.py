"""Straight-line programs in relaxed form.

A rule body is a list of items. An item is a letter (plain ``int``), a
reference to a smaller nonterminal (:class:`Ref`) or a run of one letter
(:class:`Run`). Bodies hold at most two references, references point to
smaller ids only, and nonterminals with an empty value are never
referenced. The pattern axiom is referenced by no rule.

Bodies are plain Python lists. Replacing one item keeps its index, but a
step that inserts or drops items rebuilds the whole body, so it costs
time linear in the body instead of constant time per splice.

Lengths and weights saturate at :data:`MAX_LENGTH`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, NamedTuple, TypeAlias

from app.pkg.models.v1.app.validation import (
    ValidationReport,
    Violation,
    ViolationCode,
)
from app.pkg.models.v1.exceptions import UnknownSymbolError

if TYPE_CHECKING:
    from app.pkg.slp.blocklen import BlockLen

__all__ = [
    "MAX_LENGTH",
    "saturate",
    "sat_add",
    "sat_mul",
    "Ref",
    "Run",
    "Item",
    "item_letter",
    "item_length",
    "run_of",
    "SymbolTable",
    "Slp",
    "SymbolMeta",
    "TooLong",
    "validate",
    "eval_bounded",
    "compute_meta",
    "live_letters",
    "renumber_alphabet",
    "letter_at",
]

MAX_LENGTH = 2**63 - 1


def saturate(value: int) -> int:
    return value if value < MAX_LENGTH else MAX_LENGTH


def sat_add(left: int, right: int) -> int:
    return saturate(left + right)


def sat_mul(left: int, right: int) -> int:
    return saturate(left * right)


@dataclass(frozen=True, slots=True)
class Ref:
    """Reference to nonterminal ``nt``."""

    nt: int


@dataclass(frozen=True, slots=True)
class Run:
    """``letter`` repeated ``exponent`` times, exponent >= 2.

    ``span`` keeps the symbolic block length while blocks are being
    compressed; it takes no part in equality.
    """

    letter: int
    exponent: int
    span: BlockLen | None = field(default=None, compare=False, repr=False)


Item: TypeAlias = int | Ref | Run


def item_letter(item: Item) -> int | None:
    """Letter of a letter or run item, ``None`` for references."""
    if isinstance(item, Run):
        return item.letter
    if isinstance(item, Ref):
        return None
    return item


def item_length(item: Item, meta: Sequence[SymbolMeta]) -> int:
    if isinstance(item, Ref):
        return meta[item.nt].length
    if isinstance(item, Run):
        return item.exponent
    return 1


def run_of(letter: int, exponent: int, span: BlockLen | None = None) -> Item:
    """Block item of ``exponent`` letters; a single letter stays plain."""
    if exponent == 1:
        return letter
    return Run(letter, exponent, span)


class SymbolTable:
    """Terminal alphabet: per-letter weight, optional labels and origins.

    Letters are dense ints ``0 .. len(table) - 1``. ``fresh`` appends a
    new letter; ``origins`` remembers what a fresh letter replaced, as
    ``("pair", a, b)`` or ``("block", a, count)``.
    """

    __slots__ = ("weights", "labels", "origins")

    def __init__(
        self,
        weights: list[int] | None = None,
        labels: dict[int, str] | None = None,
        origins: dict[int, tuple[str, int, int]] | None = None,
    ) -> None:
        self.weights = weights if weights is not None else []
        self.labels = labels if labels is not None else {}
        self.origins = origins if origins is not None else {}

    @classmethod
    def uniform(cls, size: int, labels: dict[int, str] | None = None) -> SymbolTable:
        return cls([1] * size, labels)

    def __len__(self) -> int:
        return len(self.weights)

    @property
    def next_id(self) -> int:
        return len(self.weights)

    def weight(self, letter: int) -> int:
        return self.weights[letter]

    def fresh(self, weight: int, origin: tuple[str, int, int] | None = None) -> int:
        letter = len(self.weights)
        self.weights.append(saturate(weight))
        if origin is not None:
            self.origins[letter] = origin
        return letter

    def extend_to(self, size: int) -> None:
        while len(self.weights) < size:
            self.weights.append(1)

    def label(self, letter: int) -> str:
        return self.labels.get(letter, f"<{letter}>")

    def decode(self, letters: Iterable[int]) -> str:
        """Render letters as text when every letter has a one-char label."""
        letters = list(letters)
        if all(len(self.labels.get(x, "")) == 1 for x in letters):
            return "".join(self.labels[x] for x in letters)
        return " ".join(str(x) for x in letters)

    def copy(self) -> SymbolTable:
        return SymbolTable(list(self.weights), dict(self.labels), dict(self.origins))


class Slp:
    """Rule table with a text and a pattern axiom.

    ``stripped_prefix_weight`` and ``stripped_suffix_weight`` accumulate the
    weights of letters cut off the text value while matching.
    """

    __slots__ = (
        "rules",
        "text_axiom",
        "pattern_axiom",
        "symbols",
        "stripped_prefix_weight",
        "stripped_suffix_weight",
    )

    def __init__(
        self,
        rules: list[list[Item]],
        text_axiom: int,
        pattern_axiom: int,
        symbols: SymbolTable,
    ) -> None:
        self.rules = rules
        self.text_axiom = text_axiom
        self.pattern_axiom = pattern_axiom
        self.symbols = symbols
        self.stripped_prefix_weight = 0
        self.stripped_suffix_weight = 0

    def __len__(self) -> int:
        return len(self.rules)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Slp):
            return NotImplemented
        return (
            self.rules == other.rules
            and self.text_axiom == other.text_axiom
            and self.pattern_axiom == other.pattern_axiom
            and len(self.symbols) == len(other.symbols)
        )

    def __repr__(self) -> str:
        return (
            f"Slp(rules={len(self.rules)}, text={self.text_axiom}, "
            f"pattern={self.pattern_axiom}, alphabet={len(self.symbols)})"
        )

    @property
    def axioms(self) -> frozenset[int]:
        return frozenset((self.text_axiom, self.pattern_axiom))

    @property
    def grammar_size(self) -> int:
        return sum(len(body) for body in self.rules)

    def add_rule(self, body: list[Item]) -> int:
        self.rules.append(body)
        return len(self.rules) - 1

    def copy(self) -> Slp:
        clone = Slp(
            [list(body) for body in self.rules],
            self.text_axiom,
            self.pattern_axiom,
            self.symbols.copy(),
        )
        clone.stripped_prefix_weight = self.stripped_prefix_weight
        clone.stripped_suffix_weight = self.stripped_suffix_weight
        return clone

    def reachable(self, roots: Iterable[int] | None = None) -> list[bool]:
        """Flags of the nonterminals derivable from ``roots`` (both axioms)."""
        marked = [False] * len(self.rules)
        for root in self.axioms if roots is None else roots:
            marked[root] = True
        for nt in range(len(self.rules) - 1, -1, -1):
            if marked[nt]:
                for item in self.rules[nt]:
                    if isinstance(item, Ref):
                        marked[item.nt] = True
        return marked


@dataclass(frozen=True, slots=True)
class SymbolMeta:
    """Length, boundary letters and weight of a nonterminal's value.

    ``uniform`` tells that the value is a power of a single letter.
    """

    length: int
    first: int | None
    last: int | None
    weight: int
    uniform: bool

    @property
    def empty(self) -> bool:
        return self.length == 0


class TooLong(NamedTuple):
    length: int


def validate(slp: Slp) -> ValidationReport:
    """List every violated condition of the relaxed form and the axioms."""
    violations: list[Violation] = []
    rules = slp.rules
    count = len(rules)
    alphabet = len(slp.symbols)

    def flag(rule: int | None, code: ViolationCode, detail: str) -> None:
        violations.append(Violation(rule=rule, code=code, detail=detail))

    backward = [True] * count
    for nt, body in enumerate(rules):
        refs = 0
        for item in body:
            if isinstance(item, Ref):
                refs += 1
                if not 0 <= item.nt < count:
                    backward[nt] = False
                    flag(nt, ViolationCode.UNKNOWN_NONTERMINAL, f"references {item.nt}")
                elif item.nt >= nt:
                    backward[nt] = False
                    flag(
                        nt,
                        ViolationCode.FORWARD_REFERENCE,
                        f"rule {nt} references nonterminal {item.nt}",
                    )
                continue
            letter = item.letter if isinstance(item, Run) else item
            if not 0 <= letter < alphabet:
                flag(nt, ViolationCode.UNKNOWN_LETTER, f"letter {letter}")
            if isinstance(item, Run) and item.exponent < 2:
                flag(nt, ViolationCode.DEGENERATE_RUN, f"exponent {item.exponent}")
        if refs > 2:
            flag(nt, ViolationCode.TOO_MANY_NONTERMINALS, f"{refs} references")

    for name, axiom in (("text", slp.text_axiom), ("pattern", slp.pattern_axiom)):
        if not 0 <= axiom < count:
            flag(None, ViolationCode.UNKNOWN_AXIOM, f"{name} axiom {axiom}")

    empty = [False] * count
    for nt, body in enumerate(rules):
        if not backward[nt]:
            continue
        empty[nt] = all(isinstance(item, Ref) and empty[item.nt] for item in body)
        for item in body:
            if isinstance(item, Ref) and empty[item.nt]:
                flag(
                    nt,
                    ViolationCode.EMPTY_REFERENCED,
                    f"nonterminal {item.nt} derives the empty string",
                )

    if 0 <= slp.pattern_axiom < count:
        pattern_ref = Ref(slp.pattern_axiom)
        for nt, body in enumerate(rules):
            if pattern_ref in body:
                flag(nt, ViolationCode.PATTERN_AXIOM_REFERENCED, "")

    chomsky = all(
        (len(body) == 1 and type(body[0]) is int)
        or (len(body) == 2 and all(isinstance(item, Ref) for item in body))
        for body in rules
    )
    return ValidationReport(
        violations=violations,
        chomsky_normal_form=chomsky,
        rules=count,
    )


def _lengths(slp: Slp, upto: int) -> list[int]:
    lengths = [0] * (upto + 1)
    for nt in range(upto + 1):
        total = 0
        for item in slp.rules[nt]:
            if isinstance(item, Ref):
                if not 0 <= item.nt < nt:
                    raise UnknownSymbolError(f"rule {nt} references {item.nt}")
                total += lengths[item.nt]
            elif isinstance(item, Run):
                total += item.exponent
            else:
                total += 1
        lengths[nt] = saturate(total)
    return lengths


def eval_bounded(slp: Slp, sym: int, cap: int) -> list[int] | TooLong:
    """Value of ``sym`` if it has at most ``cap`` letters, else :class:`TooLong`."""
    if not 0 <= sym < len(slp.rules):
        raise UnknownSymbolError(f"nonterminal {sym}")
    length = _lengths(slp, sym)[sym]
    if length > cap:
        return TooLong(length)

    out: list[int] = []
    stack = [iter(slp.rules[sym])]
    while stack:
        item = next(stack[-1], None)
        if item is None:
            stack.pop()
        elif isinstance(item, Ref):
            stack.append(iter(slp.rules[item.nt]))
        elif isinstance(item, Run):
            out.extend([item.letter] * item.exponent)
        else:
            out.append(item)
    return out


def compute_meta(slp: Slp) -> list[SymbolMeta]:
    """One bottom-up pass; lengths saturate, boundary letters stay exact."""
    weights = slp.symbols.weights
    meta: list[SymbolMeta] = []
    for body in slp.rules:
        length = weight = 0
        first = last = None
        uniform = True
        for item in body:
            if isinstance(item, Ref):
                sub = meta[item.nt]
                if sub.length == 0:
                    continue
                size, head, tail, mass, flat = (
                    sub.length,
                    sub.first,
                    sub.last,
                    sub.weight,
                    sub.uniform,
                )
            elif isinstance(item, Run):
                size, head, tail, flat = item.exponent, item.letter, item.letter, True
                mass = sat_mul(item.exponent, weights[item.letter])
            else:
                size, head, tail, mass, flat = 1, item, item, weights[item], True
            if first is None:
                first = head
            uniform = uniform and flat and head == first
            last = tail
            length = sat_add(length, size)
            weight = sat_add(weight, mass)
        meta.append(SymbolMeta(length, first, last, weight, uniform and length > 0))
    return meta


def live_letters(slp: Slp) -> list[int]:
    """Sorted letters occurring in rule bodies."""
    seen = set()
    for body in slp.rules:
        for item in body:
            letter = item_letter(item)
            if letter is not None:
                seen.add(letter)
    return sorted(seen)


def renumber_alphabet(slp: Slp) -> Slp:
    """Map live letters onto ``0 .. k-1`` keeping their order and weights.

    Origins refer to retired ids and are dropped.
    """
    live = live_letters(slp)
    mapping = {old: new for new, old in enumerate(live)}
    if all(old == new for old, new in mapping.items()) and len(live) == len(slp.symbols):
        slp.symbols.origins = {}
        return slp

    for nt, body in enumerate(slp.rules):
        renamed: list[Item] = []
        for item in body:
            if isinstance(item, Ref):
                renamed.append(item)
            elif isinstance(item, Run):
                renamed.append(Run(mapping[item.letter], item.exponent, item.span))
            else:
                renamed.append(mapping[item])
        slp.rules[nt] = renamed

    old = slp.symbols
    slp.symbols = SymbolTable(
        [old.weights[letter] for letter in live],
        {mapping[k]: v for k, v in old.labels.items() if k in mapping},
    )
    return slp


def letter_at(slp: Slp, sym: int, index: int, meta: Sequence[SymbolMeta]) -> int:
    """Letter at 1-based ``index`` of the value of ``sym``."""
    if not 1 <= index <= meta[sym].length:
        raise UnknownSymbolError(f"position {index} of nonterminal {sym}")
    rule = sym
    while True:
        for item in slp.rules[rule]:
            size = item_length(item, meta)
            if index <= size:
                if isinstance(item, Ref):
                    rule = item.nt
                    break
                return item_letter(item)
            index -= size
        else:
            raise UnknownSymbolError(f"position {index} of nonterminal {sym}")
