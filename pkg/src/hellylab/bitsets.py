"""Bitmask encodings of vertex subsets and the lexicographic conventions.

Vertices are indices 0..n-1; a subset is the integer mask with bit i set for
vertex i. All deterministic tie-breaking in the package uses *tuple order*:
subsets compare as their sorted index tuples, so () < (0,) < (0, 1) < (1,).
For subsets of equal size this is decided by the lowest differing bit.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def tuple_of(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def set_of(mask: int) -> frozenset[int]:
    return frozenset(tuple_of(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lex_less(a: int, b: int) -> bool:
    """Tuple order for equal-size masks: True iff tuple(a) < tuple(b)."""
    if a == b:
        return False
    d = a ^ b
    low = d & -d
    return bool(a & low)


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def k_submasks(mask: int, k: int) -> Iterator[int]:
    """Size-k submasks in lexicographic tuple order."""
    verts = tuple_of(mask)
    if k < 0 or k > len(verts):
        return
    for combo in combinations(verts, k):
        yield mask_of(combo)


def subsets_lex(vertices: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Every subset of ``vertices`` as a sorted tuple, in tuple order.

    Tuple order interleaves sizes: (0,) precedes (0, 1) precedes (1,).
    """
    verts = sorted(vertices)

    def rec(prefix: list[int], start: int) -> Iterator[tuple[int, ...]]:
        yield tuple(prefix)
        for i in range(start, len(verts)):
            prefix.append(verts[i])
            yield from rec(prefix, i + 1)
            prefix.pop()

    yield from rec([], 0)
