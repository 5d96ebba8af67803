import pytest

from app.pkg.models.v1.app.enums import EndFixMode
from app.pkg.models.v1.exceptions import PatternTooShort
from app.pkg.slp.core import Ref, Slp, SymbolTable, compute_meta, eval_bounded
from app.pkg.slp.endfix import (
    EndFixPlan,
    assign_marker_weights,
    fix_ends_slp,
    leading_block_length,
    plan_endfix,
    strip_text_prefix,
    strip_text_suffix,
    trailing_block_length,
)
from app.pkg.slp.driver import PhaseEngine
from app.pkg.slp.generators import from_text_balanced, from_texts_balanced, gen_instance
from app.pkg.slp.oracle import naive_match


@pytest.mark.parametrize(
    "name, mode, leading, trailing",
    [
        ("aaab_aab.slp", EndFixMode.DIFFERENT_BLOCK, 2, 1),
        ("ababa_bab.slp", EndFixMode.SAME_LETTER, 1, 1),
        ("ababa_baba.slp", EndFixMode.DIFFERENT_PAIR, 1, 1),
        ("power_60_30.slp", EndFixMode.PATTERN_IS_POWER, 2**30, 2**30),
    ],
)
def test_plan(load_instance, name: str, mode: EndFixMode, leading: int, trailing: int):
    slp = load_instance(name)
    plan = plan_endfix(slp)
    assert plan.mode == mode
    assert (plan.leading, plan.trailing) == (leading, trailing)
    assert plan.fresh_from == len(slp.symbols)


def test_plan_needs_two_letters():
    slp = Slp([[0], [1], [Ref(0), Ref(1)]], 2, 0, SymbolTable.uniform(2))
    with pytest.raises(PatternTooShort):
        plan_endfix(slp)


@pytest.mark.parametrize(
    "text, letter, leading, trailing",
    [
        ("aaabaa", 0, 3, 2),
        ("aaaaaaa", 0, 7, 7),
        ("abbb", 0, 1, 0),
        ("abbb", 1, 0, 3),
    ],
)
def test_boundary_blocks(text: str, letter: int, leading: int, trailing: int):
    slp = from_text_balanced(text)
    meta = compute_meta(slp)
    assert leading_block_length(slp, slp.text_axiom, letter, meta) == leading
    assert trailing_block_length(slp, slp.text_axiom, letter, meta) == trailing


def test_strip_text_ends():
    slp = from_texts_balanced("aab", "ab")
    assert not strip_text_prefix(slp, 1)
    assert strip_text_prefix(slp, 0)
    assert slp.stripped_prefix_weight == 1
    assert eval_bounded(slp, slp.text_axiom, 10) == [0, 1]

    assert strip_text_suffix(slp, 1)
    assert slp.stripped_suffix_weight == 1
    assert eval_bounded(slp, slp.text_axiom, 10) == [0]
    assert eval_bounded(slp, slp.pattern_axiom, 10) == [0, 1]


def test_marker_weights():
    plan = EndFixPlan(
        first=0,
        last=0,
        mode=EndFixMode.SAME_LETTER,
        leading=2,
        trailing=3,
        pattern_length=9,
        fresh_from=2,
    )
    symbols = SymbolTable([3, 1])
    table = assign_marker_weights(symbols, plan)
    assert symbols.weight(table.left) == 6
    assert symbols.weight(table.right) == 0
    assert table.left >= plan.fresh_from
    assert table.right >= plan.fresh_from


def test_fix_different_pair(load_instance):
    slp = load_instance("ababa_baba.slp")
    plan = plan_endfix(slp)
    fix_ends_slp(slp, plan)
    pattern = eval_bounded(slp, slp.pattern_axiom, 10)
    marker = pattern[0]
    assert marker >= plan.fresh_from
    assert pattern == [marker, marker]
    assert eval_bounded(slp, slp.text_axiom, 10) == [0, marker, marker]


def translated_positions(slp: Slp, text: list[int], pattern: list[int]) -> list[int]:
    """Input positions of the occurrences of ``pattern`` in ``text``, read through weights."""
    positions = []
    offset = slp.stripped_prefix_weight
    for index in range(len(text) - len(pattern) + 1):
        if text[index : index + len(pattern)] == pattern:
            positions.append(offset + 1)
        offset += slp.symbols.weight(text[index])
    return positions


def check_against_input(slp: Slp, expected: list[int], text_length: int) -> None:
    text = eval_bounded(slp, slp.text_axiom, 10**4)
    pattern = eval_bounded(slp, slp.pattern_axiom, 10**4)
    assert translated_positions(slp, text, pattern) == expected
    kept = sum(slp.symbols.weight(letter) for letter in text)
    assert kept + slp.stripped_prefix_weight + slp.stripped_suffix_weight == text_length


@pytest.mark.parametrize("seed", range(50))
def test_fix_ends_keeps_occurrences_and_weight(seed: int):
    for index in range(10):
        instance_seed = seed * 10 + index
        slp = gen_instance(instance_seed, 30, 2 + instance_seed % 2, 8, 3_000)
        text = eval_bounded(slp, slp.text_axiom, 10**4)
        pattern = eval_bounded(slp, slp.pattern_axiom, 10**4)
        if len(pattern) < 2:
            continue
        expected = naive_match(text, pattern)

        engine = PhaseEngine.start(slp, debug=False)
        while True:
            pattern_length, text_length = engine.lengths()
            if pattern_length == 1 or pattern_length > text_length:
                break
            check_against_input(engine.slp, expected, len(text))
            fixed = engine.slp.copy()
            fix_ends_slp(fixed, plan_endfix(fixed))
            check_against_input(fixed, expected, len(text))
            engine.run_phase()
