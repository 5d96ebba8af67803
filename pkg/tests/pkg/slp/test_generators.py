import pytest

from app.pkg.models.v1.exceptions import EmptyPattern, EmptyTextError, ParameterOutOfRange
from app.pkg.slp.core import compute_meta, eval_bounded, validate
from app.pkg.slp.generators import (
    from_text_balanced,
    from_texts_balanced,
    gen_family_instance,
    gen_fibonacci,
    gen_instance,
    gen_power,
    gen_random,
    gen_thue_morse,
    join_instances,
    with_pattern,
)


def text_of(slp, which: str = "text") -> str:
    axiom = slp.text_axiom if which == "text" else slp.pattern_axiom
    return slp.symbols.decode(eval_bounded(slp, axiom, 10**6))


@pytest.mark.parametrize(
    "k, expected",
    [(1, "b"), (2, "a"), (3, "ab"), (5, "abaab"), (7, "abaababaabaab")],
)
def test_fibonacci(k: int, expected: str):
    slp = gen_fibonacci(k)
    assert text_of(slp) == expected
    assert validate(slp).chomsky_normal_form


@pytest.mark.parametrize("k, expected", [(0, "a"), (1, "ab"), (2, "abba"), (3, "abbabaab")])
def test_thue_morse(k: int, expected: str):
    assert text_of(gen_thue_morse(k)) == expected


@pytest.mark.parametrize("exponent", [1, 2, 5, 13, 64])
def test_power(exponent: int):
    slp = gen_power(2, exponent)
    meta = compute_meta(slp)[slp.text_axiom]
    assert meta.length == exponent
    assert meta.uniform
    assert meta.first == 2
    assert len(slp.rules) <= 2 * exponent.bit_length()


def test_balanced_grammar():
    slp = from_text_balanced("abracadabra")
    assert text_of(slp) == "abracadabra"
    assert validate(slp).chomsky_normal_form
    assert slp.text_axiom == slp.pattern_axiom


def test_balanced_text_and_pattern():
    slp = from_texts_balanced("ababa", "baba")
    assert validate(slp).valid
    assert (text_of(slp), text_of(slp, "pattern")) == ("ababa", "baba")


def test_one_letter_pattern_gets_own_rule():
    slp = from_texts_balanced("abc", "b")
    assert validate(slp).valid
    assert text_of(slp, "pattern") == "b"


def test_balanced_from_letters():
    slp = from_texts_balanced([0, 2, 2, 1], [2, 1])
    assert eval_bounded(slp, slp.pattern_axiom, 10) == [2, 1]
    assert len(slp.symbols) == 3


def test_empty_inputs():
    with pytest.raises(EmptyTextError):
        from_text_balanced("")
    with pytest.raises(EmptyPattern):
        from_texts_balanced("ab", "")


def test_join_instances():
    slp = join_instances(from_text_balanced("abab"), from_text_balanced("ba"))
    assert validate(slp).valid
    assert (text_of(slp), text_of(slp, "pattern")) == ("abab", "ba")


def test_random_is_deterministic():
    assert gen_random(11, 30, 3) == gen_random(11, 30, 3)
    assert gen_random(11, 30, 3) != gen_random(12, 30, 3)


@pytest.mark.parametrize("seed", range(10))
def test_random_respects_length(seed: int):
    slp = gen_random(seed, 40, 3, max_length=200)
    assert validate(slp).chomsky_normal_form
    assert compute_meta(slp)[slp.text_axiom].length <= 200


@pytest.mark.parametrize("seed", range(10))
def test_instance(seed: int):
    slp = gen_instance(seed, 30, 3, 6, 1_000)
    assert validate(slp).valid
    meta = compute_meta(slp)
    assert 1 <= meta[slp.pattern_axiom].length <= 6
    assert len(slp.symbols) == 3


def test_instance_pattern_occurs_when_not_mutated():
    slp = gen_instance(3, 30, 3, 6, 1_000, mutate=0.0)
    text = eval_bounded(slp, slp.text_axiom, 1_000)
    pattern = eval_bounded(slp, slp.pattern_axiom, 1_000)
    assert any(text[i : i + len(pattern)] == pattern for i in range(len(text)))


def test_with_pattern():
    slp = with_pattern(gen_fibonacci(7), 2)
    assert validate(slp).valid
    assert text_of(slp, "pattern") == "ab"


@pytest.mark.parametrize(
    "family, size, pattern_size, text, pattern",
    [
        ("fibonacci", 6, 3, "abaababa", "ab"),
        ("thue-morse", 3, 2, "abbabaab", "abba"),
        ("power", 3, 1, "aaaaaaaa", "aa"),
    ],
)
def test_family_instance(family: str, size: int, pattern_size: int, text: str, pattern: str):
    slp = gen_family_instance(family, size, pattern_size)
    assert validate(slp).valid
    assert (text_of(slp), text_of(slp, "pattern")) == (text, pattern)


def test_bad_parameters():
    with pytest.raises(ParameterOutOfRange):
        gen_fibonacci(0)
    with pytest.raises(ParameterOutOfRange):
        gen_power(0, 0)
    with pytest.raises(ParameterOutOfRange):
        gen_family_instance("fibonacci", 3, 4)
    with pytest.raises(ParameterOutOfRange):
        gen_family_instance("zigzag", 3, 1)
