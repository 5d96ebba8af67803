"""Stable counting and radix sorts over small integer keys."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from typing import TypeVar

__all__ = ["counting_sort", "radix_sort", "radix_sort_ints"]

T = TypeVar("T")

DIGIT_BITS = 8
DIGIT_MASK = (1 << DIGIT_BITS) - 1


def counting_sort(items: Sequence[T], key: Callable[[T], int], key_range: int) -> list[T]:
    """Stable sort of ``items`` by ``key`` with values in ``0 .. key_range - 1``."""
    buckets: list[list[T]] = [[] for _ in range(key_range)]
    for item in items:
        buckets[key(item)].append(item)
    return [item for bucket in buckets for item in bucket]


def radix_sort(
    items: Sequence[T],
    keys: Sequence[Callable[[T], int]],
    ranges: Sequence[int],
) -> list[T]:
    """Lexicographic sort by ``keys``, most significant key first."""
    ordered = list(items)
    for key, key_range in zip(reversed(keys), reversed(ranges)):
        ordered = counting_sort(ordered, key, key_range)
    return ordered


def radix_sort_ints(values: Sequence[int]) -> list[int]:
    """Indices of non-negative ``values`` in ascending value order.

    Values are bucketed by bit length first, so each bucket only pays
    for the digits its own values have.
    """
    by_width = counting_sort(
        range(len(values)),
        lambda index: values[index].bit_length(),
        max((v.bit_length() for v in values), default=0) + 1,
    )
    out: list[int] = []
    start = 0
    while start < len(by_width):
        width = values[by_width[start]].bit_length()
        stop = start
        while stop < len(by_width) and values[by_width[stop]].bit_length() == width:
            stop += 1
        group = by_width[start:stop]
        for shift in range(0, width, DIGIT_BITS):
            group = counting_sort(
                group,
                lambda index, s=shift: (values[index] >> s) & DIGIT_MASK,
                DIGIT_MASK + 1,
            )
        out.extend(group)
        start = stop
    return out
