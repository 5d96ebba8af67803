"""Brute-force referees working on decompressed values.

They refuse values longer than the budget instead of approximating.
"""

from __future__ import annotations

from collections.abc import Sequence

from app.pkg.models.v1.app.oracle import OracleBudget
from app.pkg.models.v1.exceptions import EmptyPattern, OracleBudgetExceeded
from app.pkg.slp.core import Ref, Run, Slp, SymbolTable, eval_bounded

__all__ = [
    "naive_match",
    "scan_match",
    "decompress",
    "oracle_fcpm",
    "oracle_equal",
    "classify_crossing_bruteforce",
    "replay_origins",
]


def naive_match(text: Sequence[int], pattern: Sequence[int]) -> list[int]:
    """1-based start positions by comparing every window."""
    if not pattern:
        raise EmptyPattern()
    size = len(pattern)
    pattern = list(pattern)
    return [i + 1 for i in range(len(text) - size + 1) if list(text[i : i + size]) == pattern]


def scan_match(text: Sequence[int], pattern: Sequence[int]) -> list[int]:
    """Same answer as :func:`naive_match` from a two-pointer scan."""
    if not pattern:
        raise EmptyPattern()
    positions = []
    i = j = 0
    while i < len(text):
        if text[i] == pattern[j]:
            i += 1
            j += 1
            if j == len(pattern):
                positions.append(i - j + 1)
                i, j = i - j + 1, 0
        else:
            i, j = i - j + 1, 0
    return positions


def decompress(slp: Slp, sym: int, budget: OracleBudget | None = None) -> list[int]:
    budget = budget or OracleBudget()
    value = eval_bounded(slp, sym, budget.max_decompressed_length)
    if not isinstance(value, list):
        raise OracleBudgetExceeded(
            f"nonterminal {sym} has {value.length} letters, "
            f"budget is {budget.max_decompressed_length}",
        )
    return value


def oracle_fcpm(slp: Slp, budget: OracleBudget | None = None) -> list[int]:
    """Occurrence positions of the pattern axiom in the text axiom."""
    text = decompress(slp, slp.text_axiom, budget)
    pattern = decompress(slp, slp.pattern_axiom, budget)
    return naive_match(text, pattern)


def oracle_equal(slp: Slp, budget: OracleBudget | None = None) -> bool:
    return decompress(slp, slp.text_axiom, budget) == decompress(slp, slp.pattern_axiom, budget)


def classify_crossing_bruteforce(
    slp: Slp,
    budget: OracleBudget | None = None,
) -> tuple[set[tuple[int, int]], set[int]]:
    """Crossing pairs and crossing block letters found from decompressed values."""
    values: dict[int, list[int]] = {}

    def value(nt: int) -> list[int]:
        if nt not in values:
            values[nt] = decompress(slp, nt, budget)
        return values[nt]

    pairs: set[tuple[int, int]] = set()
    letters: set[int] = set()
    for body in slp.rules:
        pieces: list[tuple[bool, int, int]] = []
        for item in body:
            if isinstance(item, Ref):
                found = value(item.nt)
                if found:
                    pieces.append((True, found[0], found[-1]))
            elif isinstance(item, Run):
                pieces.append((False, item.letter, item.letter))
            else:
                pieces.append((False, item, item))
        for left, right in zip(pieces, pieces[1:]):
            if not (left[0] or right[0]):
                continue
            a, b = left[2], right[1]
            if a == b:
                letters.add(a)
            else:
                pairs.add((a, b))
    return pairs, letters


def replay_origins(letters: Sequence[int], symbols: SymbolTable, limit: int | None = None) -> list[int]:
    """Expand letters made by compression back into the letters they replaced."""
    out: list[int] = []
    stack = list(reversed(letters))
    while stack:
        letter = stack.pop()
        origin = symbols.origins.get(letter)
        if origin is None:
            out.append(letter)
            if limit is not None and len(out) > limit:
                raise OracleBudgetExceeded(f"replay exceeds {limit} letters")
            continue
        kind, a, b = origin
        if kind == "pair":
            stack.extend((b, a))
        else:
            stack.extend([a] * b)
    return out
