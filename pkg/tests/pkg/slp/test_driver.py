import math
import random

import pytest

from app.pkg.models.v1.app.enums import Strategy, Which
from app.pkg.models.v1.exceptions import EmptyPattern, InvalidSlpError
from app.pkg.slp.core import Slp, SymbolTable
from app.pkg.slp.driver import PhaseEngine, equal_slp, fcpm, phase_limit
from app.pkg.slp.generators import (
    from_text_balanced,
    from_texts_balanced,
    gen_family_instance,
    gen_fibonacci,
    gen_instance,
    gen_power,
    join_instances,
)
from app.pkg.slp.oracle import naive_match, oracle_equal, oracle_fcpm

STRATEGIES = [Strategy.GREEDY, Strategy.BINARY]


@pytest.mark.parametrize(
    "name, positions",
    [
        ("ababa_baba.slp", [2]),
        ("aaab_aab.slp", [2]),
        ("ababa_bab.slp", [2]),
        ("fibonacci7_aba.slp", [1, 4, 6, 9]),
    ],
)
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_testdata(load_instance, name: str, positions: list[int], strategy: Strategy):
    occurrences = fcpm(load_instance(name), strategy, debug=True)
    assert occurrences.count() == len(positions)
    assert occurrences.position(Which.FIRST).value == positions[0]
    assert occurrences.position("last").value == positions[-1]
    assert occurrences.enumerate_positions(10) == positions
    assert occurrences.enumerate_positions(1) == positions[:1]


def test_power_of_one_letter(load_instance):
    occurrences = fcpm(load_instance("power_60_30.slp"))
    assert occurrences.count() == 2**60 - 2**30 + 1
    assert occurrences.position(Which.FIRST).value == 1
    assert occurrences.position(Which.LAST).value == 2**60 - 2**30 + 1
    assert occurrences.enumerate_positions(3) == [1, 2, 3]


def test_power_from_generators():
    occurrences = fcpm(join_instances(gen_power(0, 2**60), gen_power(0, 2**20)))
    assert occurrences.count() == 2**60 - 2**20 + 1
    assert occurrences.position(Which.LAST).value == 2**60 - 2**20 + 1


@pytest.mark.parametrize("k", [10, 20, 40])
def test_fibonacci_phases(k: int):
    slp = gen_family_instance("fibonacci", k, k - 2)
    occurrences = fcpm(slp)
    assert occurrences.position(Which.FIRST).value == 1
    assert len(occurrences.phases) <= phase_limit(occurrences.phases[0].pattern_length)


def test_phases_grow_with_log_pattern_length():
    ratios = {}
    for k in [10, 20, 30, 40, 50, 60, 70, 80]:
        occurrences = fcpm(gen_family_instance("fibonacci", k, k - 2))
        length = occurrences.phases[0].pattern_length
        assert len(occurrences.phases) <= phase_limit(length)
        ratios[k] = len(occurrences.phases) / math.log2(length)
    assert all(ratios[k] <= 2 * ratios[20] for k in ratios if k > 20), ratios


GRAMMAR_SIZE_FACTOR = 200


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_grammar_size_stays_bounded(strategy: Strategy):
    instances = [gen_instance(seed, 40, 3, 10, 5_000) for seed in range(10)]
    instances += [gen_family_instance("fibonacci", k, k - 3) for k in (20, 40)]
    instances.append(gen_family_instance("thue-morse", 8, 4))
    for slp in instances:
        size = slp.grammar_size
        bound = GRAMMAR_SIZE_FACTOR * size
        if strategy == Strategy.BINARY:
            bound *= math.log2(size + 2)
        phases = fcpm(slp, strategy).phases
        assert max((stats.grammar_size for stats in phases), default=size) <= bound


def test_input_is_left_untouched(load_instance):
    slp = load_instance("fibonacci7_aba.slp")
    before = slp.copy()
    fcpm(slp)
    assert slp == before


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_against_oracle(seed: int, strategy: Strategy):
    slp = gen_instance(seed, 30, 3, 8, 3_000)
    expected = oracle_fcpm(slp)
    occurrences = fcpm(slp, strategy)
    assert occurrences.count() == len(expected)
    assert occurrences.enumerate_positions(len(expected)) == expected
    if expected:
        assert occurrences.position(Which.LAST).value == expected[-1]
    else:
        assert occurrences.position(Which.FIRST) is None


@pytest.mark.parametrize("seed", range(6))
def test_binary_alphabet_against_oracle(seed: int):
    slp = gen_instance(seed, 40, 2, 12, 3_000, mutate=0.0)
    expected = oracle_fcpm(slp)
    assert expected
    assert fcpm(slp).enumerate_positions(len(expected)) == expected


@pytest.mark.parametrize(
    "text, pattern, positions",
    [
        ("babaaaa", "baaa", [3]),
        ("aaaabab", "aaab", [2]),
        ("bbabbba", "bbba", [4]),
        ("abaaaab", "aaab", [4]),
    ],
)
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_pair_next_to_a_run(text: str, pattern: str, positions: list[int], strategy: Strategy):
    occurrences = fcpm(from_texts_balanced(text, pattern), strategy, debug=True)
    assert occurrences.enumerate_positions(10) == positions


def random_word(rng: random.Random, alphabet: str, low: int, high: int) -> str:
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(low, high)))


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("alphabet", ["ab", "abc"])
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_short_words_against_naive_search(seed: int, alphabet: str, strategy: Strategy):
    rng = random.Random(seed)
    for _ in range(25):
        text = random_word(rng, alphabet, 2, 16)
        pattern = random_word(rng, alphabet, 2, 6)
        expected = naive_match(text, pattern)
        occurrences = fcpm(from_texts_balanced(text, pattern), strategy)
        assert occurrences.count() == len(expected), (text, pattern)
        assert occurrences.enumerate_positions(len(expected) + 1) == expected, (text, pattern)


def test_pattern_longer_than_text():
    occurrences = fcpm(from_texts_balanced("ab", "abab"))
    assert occurrences.count() == 0
    assert occurrences.position(Which.FIRST) is None
    assert occurrences.enumerate_positions(5) == []


def test_one_letter_pattern():
    occurrences = fcpm(from_texts_balanced("abcabc", "c"))
    assert occurrences.enumerate_positions(5) == [3, 6]
    assert occurrences.phases == []


def test_empty_pattern():
    slp = Slp([[0], []], 0, 1, SymbolTable.uniform(1))
    with pytest.raises(EmptyPattern):
        fcpm(slp)


def test_invalid_instance(load_instance):
    with pytest.raises(InvalidSlpError) as error:
        fcpm(load_instance("forward_reference.slp"))
    assert "rule 1" in error.value.message


def test_trace_sees_every_phase(load_instance):
    seen = []
    occurrences = fcpm(load_instance("fibonacci7_aba.slp"), trace=seen.append)
    assert seen == occurrences.phases
    assert [stats.phase for stats in seen] == list(range(len(seen)))
    assert seen[0].pattern_length == 3


def test_phases_stay_within_limit():
    slp = gen_instance(3, 60, 3, 40, 20_000, mutate=0.0)
    engine = PhaseEngine.start(slp)
    occurrences = fcpm(slp)
    assert len(occurrences.phases) <= phase_limit(engine.pattern_length)


class TestEquality:
    @pytest.mark.parametrize(
        "text, pattern, expected",
        [
            ("abaababa", "abaababa", True),
            ("abaababa", "abaababb", False),
            ("aaaa", "aaa", False),
            ("abcabcabc", "abcabcabc", True),
            ("abab", "baba", False),
        ],
    )
    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_raw_strings(self, text: str, pattern: str, expected: bool, strategy: Strategy):
        assert equal_slp(from_texts_balanced(text, pattern), strategy) is expected

    def test_different_grammars_for_one_string(self):
        slp = join_instances(gen_fibonacci(8), from_text_balanced("abaababaabaababaababa"))
        assert oracle_equal(slp)
        assert equal_slp(slp)

    @pytest.mark.parametrize("seed", range(10))
    def test_against_oracle(self, seed: int):
        slp = gen_instance(seed, 25, 2, 4, 2_000)
        assert equal_slp(slp) is oracle_equal(slp)

    def test_invalid_instance(self, load_instance):
        with pytest.raises(InvalidSlpError):
            equal_slp(load_instance("forward_reference.slp"))
