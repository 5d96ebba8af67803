"""Instance builders: balanced grammars for explicit strings and families."""

from __future__ import annotations

import random
from collections.abc import Sequence

from app.pkg.models.v1.exceptions import (
    EmptyPattern,
    EmptyTextError,
    ParameterOutOfRange,
)
from app.pkg.slp.core import Item, Ref, Slp, SymbolTable, eval_bounded

__all__ = [
    "from_text_balanced",
    "from_texts_balanced",
    "join_instances",
    "gen_fibonacci",
    "gen_power",
    "gen_thue_morse",
    "gen_random",
    "gen_instance",
    "with_pattern",
    "gen_family_instance",
]


def _letter_labels(size: int) -> dict[int, str]:
    return {letter: chr(ord("a") + letter) for letter in range(min(size, 26))}


def _encode(
    text: str | Sequence[int],
    pattern: str | Sequence[int] | None,
) -> tuple[list[int], list[int] | None, SymbolTable]:
    if isinstance(text, str):
        chars = sorted(set(text) | set(pattern or ""))
        index = {char: letter for letter, char in enumerate(chars)}
        return (
            [index[char] for char in text],
            None if pattern is None else [index[char] for char in pattern],
            SymbolTable.uniform(len(chars), dict(enumerate(chars))),
        )
    letters = list(text)
    other = None if pattern is None else list(pattern)
    size = max(letters + (other or [])) + 1
    return letters, other, SymbolTable.uniform(size, _letter_labels(size))


class _BalancedBuilder:
    """Pairs neighbours level by level, sharing one rule per letter."""

    def __init__(self) -> None:
        self.rules: list[list[Item]] = []
        self.terminals: dict[int, int] = {}

    def add(self, body: list[Item]) -> int:
        self.rules.append(body)
        return len(self.rules) - 1

    def terminal(self, letter: int) -> int:
        if letter not in self.terminals:
            self.terminals[letter] = self.add([letter])
        return self.terminals[letter]

    def build(self, letters: list[int], own_root: bool = False) -> int:
        if len(letters) == 1:
            return self.add([letters[0]]) if own_root else self.terminal(letters[0])
        level = [self.terminal(letter) for letter in letters]
        while len(level) > 1:
            paired = [
                self.add([Ref(level[i]), Ref(level[i + 1])])
                for i in range(0, len(level) - 1, 2)
            ]
            if len(level) % 2:
                paired.append(level[-1])
            level = paired
        return level[0]


def from_text_balanced(text: str | Sequence[int]) -> Slp:
    """Balanced grammar in Chomsky normal form; both axioms derive ``text``."""
    return from_texts_balanced(text)


def from_texts_balanced(
    text: str | Sequence[int],
    pattern: str | Sequence[int] | None = None,
) -> Slp:
    """Balanced grammars for text and pattern over one shared alphabet.

    Without ``pattern`` the pattern axiom is the text axiom.
    """
    if len(text) == 0:
        raise EmptyTextError()
    if pattern is not None and len(pattern) == 0:
        raise EmptyPattern()
    text_letters, pattern_letters, symbols = _encode(text, pattern)
    builder = _BalancedBuilder()
    text_axiom = builder.build(text_letters)
    pattern_axiom = text_axiom
    if pattern_letters is not None:
        pattern_axiom = builder.build(pattern_letters, own_root=True)
    return Slp(builder.rules, text_axiom, pattern_axiom, symbols)


def join_instances(text: Slp, pattern: Slp) -> Slp:
    """Instance with the text axiom of ``text`` and the pattern axiom of ``pattern``.

    Letter ids are shared as they are.
    """
    offset = len(text.rules)
    rules = [list(body) for body in text.rules]
    for body in pattern.rules:
        rules.append([Ref(item.nt + offset) if isinstance(item, Ref) else item for item in body])
    size = max(len(text.symbols), len(pattern.symbols))
    weights = list(text.symbols.weights) + pattern.symbols.weights[len(text.symbols) :]
    labels = {**pattern.symbols.labels, **text.symbols.labels}
    return Slp(
        rules,
        text.text_axiom,
        pattern.pattern_axiom + offset,
        SymbolTable(weights[:size], labels),
    )


def gen_fibonacci(k: int) -> Slp:
    """Fibonacci word: X1 = b, X2 = a, Xi = X(i-1) X(i-2); axioms are Xk."""
    if k < 1:
        raise ParameterOutOfRange(f"fibonacci index must be positive, got {k}")
    rules: list[list[Item]] = [[1], [0]]
    for i in range(3, k + 1):
        rules.append([Ref(i - 2), Ref(i - 3)])
    rules = rules[:k]
    return Slp(rules, k - 1, k - 1, SymbolTable.uniform(2, _letter_labels(2)))


def gen_power(letter: int, exponent: int) -> Slp:
    """``letter`` to the power ``exponent`` by a doubling chain."""
    if letter < 0 or exponent < 1:
        raise ParameterOutOfRange("power needs letter >= 0 and exponent >= 1")
    rules: list[list[Item]] = [[letter]]
    doubling = [0]
    for _ in range(1, exponent.bit_length()):
        rules.append([Ref(doubling[-1]), Ref(doubling[-1])])
        doubling.append(len(rules) - 1)
    axiom: int | None = None
    for bit, rule in enumerate(doubling):
        if not exponent >> bit & 1:
            continue
        if axiom is None:
            axiom = rule
        else:
            rules.append([Ref(rule), Ref(axiom)])
            axiom = len(rules) - 1
    return Slp(rules, axiom, axiom, SymbolTable.uniform(letter + 1, _letter_labels(letter + 1)))


def gen_thue_morse(k: int) -> Slp:
    """Thue-Morse word of length 2^k: A(i) = A(i-1) B(i-1), B(i) = B(i-1) A(i-1)."""
    if k < 0:
        raise ParameterOutOfRange(f"thue-morse order must not be negative, got {k}")
    rules: list[list[Item]] = [[0], [1]]
    a, b = 0, 1
    for _ in range(k):
        rules.append([Ref(a), Ref(b)])
        rules.append([Ref(b), Ref(a)])
        a, b = len(rules) - 2, len(rules) - 1
    return Slp(rules, a, a, SymbolTable.uniform(2, _letter_labels(2)))


def gen_random(
    seed: int,
    rules: int,
    alphabet: int,
    max_length: int | None = None,
) -> Slp:
    """Random grammar in Chomsky normal form; the last rule is both axioms.

    The same seed gives the same grammar.
    """
    if rules < 1 or alphabet < 1:
        raise ParameterOutOfRange("rules and alphabet must be positive")
    terminals = min(rules, alphabet)
    if rules > terminals and max_length is not None and max_length < 2:
        raise ParameterOutOfRange("max_length must allow binary rules")
    rng = random.Random(seed)
    bodies: list[list[Item]] = [[letter] for letter in range(terminals)]
    lengths = [1] * terminals
    for nt in range(terminals, rules):
        recent = max(0, nt - 4)
        for _ in range(8):
            left = rng.randrange(recent, nt) if rng.random() < 0.6 else rng.randrange(nt)
            right = rng.randrange(nt)
            if max_length is None or lengths[left] + lengths[right] <= max_length:
                break
        else:
            left, right = rng.randrange(terminals), rng.randrange(terminals)
        bodies.append([Ref(left), Ref(right)])
        lengths.append(lengths[left] + lengths[right])
    return Slp(
        bodies,
        rules - 1,
        rules - 1,
        SymbolTable.uniform(alphabet, _letter_labels(alphabet)),
    )


def gen_instance(
    seed: int,
    rules: int,
    alphabet: int,
    pattern_length: int,
    max_text_length: int,
    mutate: float = 0.3,
) -> Slp:
    """Random text grammar joined with a pattern cut from its value.

    With probability ``mutate`` one pattern letter is replaced at random,
    so some instances have no occurrence.
    """
    text_slp = gen_random(seed, rules, alphabet, max_length=max_text_length)
    text = eval_bounded(text_slp, text_slp.text_axiom, max_text_length)
    if not isinstance(text, list):
        raise ParameterOutOfRange(f"text longer than {max_text_length}")
    rng = random.Random(seed ^ 0x5F3759DF)
    size = rng.randint(1, min(pattern_length, len(text)))
    start = rng.randrange(len(text) - size + 1)
    pattern = text[start : start + size]
    if rng.random() < mutate:
        pattern[rng.randrange(size)] = rng.randrange(alphabet)
    pattern_slp = from_text_balanced(pattern)
    pattern_slp.symbols.extend_to(alphabet)
    return join_instances(text_slp, pattern_slp)


def with_pattern(slp: Slp, nt: int) -> Slp:
    """Same grammar with the pattern axiom set to a fresh copy of rule ``nt``.

    The copy is referenced by no rule, as a pattern axiom must be.
    """
    if not 0 <= nt < len(slp.rules):
        raise ParameterOutOfRange(f"no rule {nt}")
    work = slp.copy()
    work.pattern_axiom = work.add_rule(list(slp.rules[nt]))
    return work


def gen_family_instance(family: str, size: int, pattern_size: int) -> Slp:
    """Text and pattern taken from one family at two sizes.

    ``fibonacci`` and ``thue-morse`` use the members of order ``size`` and
    ``pattern_size``; ``power`` uses ``a^(2^size)`` and ``a^(2^pattern_size)``.
    """
    if not 1 <= pattern_size <= size:
        raise ParameterOutOfRange(f"pattern size {pattern_size} not in 1..{size}")
    if family == "power":
        return join_instances(gen_power(0, 2**size), gen_power(0, 2**pattern_size))
    if family == "fibonacci":
        return with_pattern(gen_fibonacci(size), pattern_size - 1)
    if family == "thue-morse":
        text = gen_thue_morse(size)
        return with_pattern(text, 2 * pattern_size)
    raise ParameterOutOfRange(f"unknown family {family!r}")
