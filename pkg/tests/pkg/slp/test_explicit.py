import copy
import random

import pytest

from app.pkg.models.v1.exceptions import EmptyPattern, EqualLettersError, NotFreshLetterError
from app.pkg.slp.core import SymbolTable
from app.pkg.slp.explicit import (
    ExplicitInstance,
    LeadingBlocks,
    MarkerBlocks,
    TrailingBlocks,
    block_compress_explicit,
    fix_beginning_explicit,
    fix_ends_explicit,
    maximal_blocks,
    pair_compress_explicit,
    set_equal,
    set_phase,
    spm_match,
    spm_phase,
)
from app.pkg.slp.oracle import naive_match, replay_origins

A, B = 0, 1


def letters(word: str) -> list[int]:
    return [ord(char) - ord("a") for char in word]


def test_pair_compression():
    assert pair_compress_explicit(letters("ababa"), A, B, 2) == [2, 2, A]


def test_pair_compression_rejects_bad_letters():
    with pytest.raises(EqualLettersError):
        pair_compress_explicit(letters("aab"), A, A, 2)
    with pytest.raises(NotFreshLetterError):
        pair_compress_explicit(letters("abc"), A, B, 2)


def test_block_compression():
    symbols = SymbolTable.uniform(2)
    out = block_compress_explicit(letters("aaab"), A, symbols)
    assert out == [2, B]
    assert symbols.weight(2) == 3
    assert symbols.origins[2] == ("block", A, 3)


def test_block_compression_shares_letters_per_length():
    out = block_compress_explicit(letters("aabaabaaa"), A)
    assert out[0] == out[2]
    assert out[4] != out[0]
    assert len(out) == 5


def test_maximal_blocks():
    assert list(maximal_blocks(letters("aabccc"))) == [(0, A, 2), (2, B, 1), (3, 2, 3)]


class TestBlockTables:
    def test_leading(self):
        table = LeadingBlocks(SymbolTable.uniform(2), A, 2)
        assert table.replace(1) == [A]
        assert table.replace(2) == [table.marker]
        excess, marker = table.replace(5)
        assert marker == table.marker
        assert table.symbols.weight(excess) == 3

    def test_trailing(self):
        table = TrailingBlocks(SymbolTable.uniform(2), A, 3)
        marker, excess = table.replace(4)
        assert marker == table.marker
        assert table.symbols.weight(marker) == 3
        assert table.symbols.weight(excess) == 1

    @pytest.mark.parametrize("leading, trailing", [(1, 1), (2, 2), (1, 3), (3, 1), (2, 4), (4, 2)])
    def test_marker_weights_add_up(self, leading: int, trailing: int):
        table = MarkerBlocks(SymbolTable.uniform(2), A, leading, trailing)
        assert table.symbols.weight(table.left) == leading
        assert table.symbols.weight(table.right) == 0
        for length in range(1, 9):
            replaced = table.replace(length)
            assert sum(table.symbols.weight(x) for x in replaced) == length

    @pytest.mark.parametrize("leading, trailing", [(1, 1), (2, 3), (3, 2)])
    def test_marker_positions(self, leading: int, trailing: int):
        table = MarkerBlocks(SymbolTable.uniform(2), A, leading, trailing)
        for length in range(1, 9):
            replaced = table.replace(length)
            assert (table.left in replaced) == (length >= leading)
            assert (table.right in replaced) == (length >= trailing)
            if table.right in replaced:
                assert replaced[0] == table.right
            if table.left in replaced:
                assert replaced[-1] == table.left

    def test_cap_makes_long_blocks_unique(self):
        table = LeadingBlocks(SymbolTable.uniform(2), A, 2, cap=3)
        assert table.replace(3) == table.replace(3)
        assert table.replace(7) != table.replace(7)


def test_fix_beginning_with_block():
    instance = ExplicitInstance.from_sequences(letters("aab"), letters("aaab"))
    fix_beginning_explicit(instance)
    marker = instance.pattern[0]
    assert instance.pattern == [marker, B]
    assert instance.text[1:] == [marker, B]
    assert instance.symbols.weight(instance.text[0]) == 1


def test_fix_ends_same_letter():
    instance = ExplicitInstance.from_sequences(letters("bab"), letters("ababa"))
    fix_ends_explicit(instance)
    assert len(instance.pattern) == 1
    assert instance.text.count(instance.pattern[0]) == 1


def test_set_phase_keeps_value():
    rng = random.Random(5)
    text = [rng.randrange(3) for _ in range(300)]
    instance = ExplicitInstance.from_sequences(text[:20], text)
    fresh_from = set_phase(instance)
    assert fresh_from == 3
    assert len(instance.text) < len(text)
    assert replay_origins(instance.text, instance.symbols) == text


@pytest.mark.parametrize(
    "text, pattern, expected",
    [
        ("ababa", "baba", [2]),
        ("aaab", "aab", [2]),
        ("ababa", "bab", [2]),
        ("abaababaabaab", "aba", [1, 4, 6, 9]),
        ("aaabaa", "aa", [1, 2, 5]),
        ("ab", "abab", []),
        ("abcabc", "c", [3, 6]),
    ],
)
def test_spm_match_examples(text: str, pattern: str, expected: list[int]):
    assert spm_match(letters(pattern), letters(text)) == expected


@pytest.mark.parametrize("seed", range(25))
def test_spm_match_against_naive(seed: int):
    rng = random.Random(seed)
    alphabet = rng.choice([2, 3])
    text = [rng.randrange(alphabet) for _ in range(rng.randrange(1, 300))]
    start = rng.randrange(len(text))
    pattern = text[start : start + rng.randrange(1, 12)]
    if rng.random() < 0.3:
        pattern[-1] = rng.randrange(alphabet)
    assert spm_match(pattern, text) == naive_match(text, pattern)


def test_spm_match_empty_pattern():
    with pytest.raises(EmptyPattern):
        spm_match([], letters("ab"))


@pytest.mark.parametrize(
    "left, right, expected",
    [
        ("abaababa", "abaababa", True),
        ("abaababa", "abaababb", False),
        ("aaaa", "aaa", False),
        ("a", "a", True),
    ],
)
def test_set_equal(left: str, right: str, expected: bool):
    assert set_equal(letters(left), letters(right)) is expected


def surviving(letters: list[int], symbols: SymbolTable, fresh_from: int) -> list[bool]:
    """Per phase-start position, whether its letter came through the phase unchanged."""
    flags: list[bool] = []
    for letter in letters:
        if letter < fresh_from:
            flags.append(True)
            continue
        kind, _, count = symbols.origins[letter]
        flags.extend([False] * (2 if kind == "pair" else count))
    return flags


def random_word(rng: random.Random) -> list[int]:
    alphabet = rng.choice([2, 3, 4])
    return [rng.randrange(alphabet) for _ in range(rng.randrange(2, 80))]


@pytest.mark.parametrize("seed", range(20))
def test_set_phase_shrinks_by_a_third(seed: int):
    rng = random.Random(seed)
    for _ in range(50):
        word = random_word(rng)
        instance = ExplicitInstance.from_sequences(word, word)
        fresh_from = set_phase(instance)
        flags = surviving(instance.text, instance.symbols, fresh_from)
        assert len(flags) == len(word)
        assert not any(left and right for left, right in zip(flags, flags[1:])), word
        assert 3 * len(instance.text) <= 2 * len(word) + 1, word


@pytest.mark.parametrize("seed", range(20))
def test_spm_phase_leaves_no_two_old_neighbours(seed: int):
    rng = random.Random(seed)
    for _ in range(30):
        text = random_word(rng)
        start = rng.randrange(len(text) - 1)
        pattern = text[start : start + rng.randrange(2, 10)]
        dry_run = copy.deepcopy(ExplicitInstance.from_sequences(pattern, text))
        fix_ends_explicit(dry_run)
        if len(dry_run.pattern) < 2:
            continue

        instance = ExplicitInstance.from_sequences(pattern, text)
        fresh_from = spm_phase(instance)
        for letters in instance.sequences():
            assert not any(a < fresh_from and b < fresh_from for a, b in zip(letters, letters[1:]))
