import random

import pytest

from app.pkg.slp.blocklen import (
    ZERO,
    BlockLen,
    CommonLength,
    CommonOrigin,
    TooLongMarker,
    build_block_lengths,
    group_block_lengths,
    mark_too_long,
    sort_block_lengths,
    span_of,
    thin_commons,
)
from app.pkg.slp.core import Ref, Run, Slp, SymbolTable


class TestBlockLen:
    def test_explicit_letters_grow_the_offset(self):
        length = BlockLen.explicit(1).concat(BlockLen.explicit(2))
        assert length.common is ZERO
        assert length.value == 3

    def test_offset_keeps_common(self):
        base = BlockLen.nonterminal_block(40)
        length = BlockLen.explicit(2).concat(base).concat(BlockLen.explicit(1))
        assert length.common is base.common
        assert (length.offset, length.value) == (3, 43)

    def test_two_commons_make_a_new_one(self):
        length = BlockLen.nonterminal_block(40).concat(BlockLen(CommonLength(7), 2))
        assert length.common.origin == CommonOrigin.CONCATENATION
        assert (length.common.value, length.offset) == (49, 0)

    def test_commons_compare_by_identity(self):
        assert CommonLength(5) != CommonLength(5)
        assert BlockLen.nonterminal_block(5) != BlockLen.nonterminal_block(5)

    def test_span_of(self):
        assert span_of(3) == BlockLen.explicit(1)
        assert span_of(Run(0, 9)).value == 9

    def test_mark_too_long(self):
        assert mark_too_long(BlockLen.explicit(5), 4) == TooLongMarker(5)
        assert mark_too_long(BlockLen.explicit(5), 5) == BlockLen.explicit(5)


def test_build_block_lengths():
    slp = Slp([[0], [Run(0, 3), 1, 0], [Ref(0), Ref(1)]], 2, 2, SymbolTable.uniform(2))
    blocks = build_block_lengths(slp, 0)
    assert [(b.rule, b.index, b.length.value) for b in blocks] == [(0, 0, 1), (1, 0, 3), (1, 2, 1)]


def test_thin_commons():
    c10, c12, c30 = CommonLength(10), CommonLength(12), CommonLength(30)
    thinning = thin_commons([c10, c12, c30], 5)
    assert thinning.kept == [ZERO, c10, c30]
    assert thinning.moves[c12] == (c10, c30)
    assert thinning.rebase(BlockLen(c12, 1)) == BlockLen(c10, 3)
    assert thinning.rebase(BlockLen(c12, 20)) == BlockLen(c30, 2)
    assert thinning.rebase(BlockLen(c30, 1)) == BlockLen(c30, 1)


def test_sort_block_lengths():
    c = CommonLength(100)
    lengths = [BlockLen(c, 2), BlockLen.explicit(3), BlockLen(c, 0), BlockLen.explicit(3)]
    assert sort_block_lengths(lengths) == [[1, 3], [2], [0]]


def test_group_block_lengths():
    a = BlockLen.nonterminal_block(100)
    b = BlockLen.nonterminal_block(100)
    c = BlockLen(a.common, 2)
    d = BlockLen.nonterminal_block(102)
    e = BlockLen.explicit(3)
    groups, stats = group_block_lengths([a, b, c, d, e], 10)
    assert groups == [[4], [0, 1], [2, 3]]
    assert stats.commons == 3
    assert stats.kept_commons == 1
    assert stats.max_offset == 3


@pytest.mark.parametrize("seed", range(10))
def test_grouping_matches_values(seed: int):
    rng = random.Random(seed)
    commons = [CommonLength(rng.randrange(1, 2**40)) for _ in range(30)]
    commons += [CommonLength(common.value + rng.randrange(0, 4)) for common in commons[:10]]
    lengths = [BlockLen(rng.choice(commons), rng.randrange(0, 8)) for _ in range(200)]
    lengths += [BlockLen.explicit(rng.randrange(1, 8)) for _ in range(20)]
    groups, _ = group_block_lengths(lengths, 16)
    values = [lengths[group[0]].value for group in groups]
    assert values == sorted(set(length.value for length in lengths))
    for group in groups:
        assert len({lengths[i].value for i in group}) == 1

