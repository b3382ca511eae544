"""Vertex sets as integer bitmasks (bit v set <=> vertex v is a member)."""

from __future__ import annotations

from typing import Iterable, Iterator


def bit(v: int) -> int:
    return 1 << v


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest(mask: int) -> int:
    """Smallest member of a non-empty mask."""
    return (mask & -mask).bit_length() - 1


def full(n: int) -> int:
    return (1 << n) - 1
