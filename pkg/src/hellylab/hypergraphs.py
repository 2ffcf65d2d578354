"""Finite ground sets, downward-closed hypergraphs, and colorful selections.

A hypergraph is stored through its maximal edges only; membership of any set
means containment in some maximal edge, which makes the family downward
closed by construction. The empty set is an edge of every hypergraph with at
least one maximal edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .bitsets import mask_of, set_of, tuple_of
from .errors import InputError


@dataclass(frozen=True)
class GroundSet:
    """Vertices 0..n-1, with optional display labels."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"ground set size must be >= 0, got {self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise InputError(
                f"{len(self.labels)} labels for {self.n} vertices"
            )

    def check_vertices(self, vertices: Iterable[int]) -> frozenset[int]:
        s = frozenset(vertices)
        for v in s:
            if not (0 <= v < self.n):
                raise InputError(f"vertex {v} outside ground set of size {self.n}")
        return s

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


def antichain_reduce(edges: Iterable[frozenset[int]]) -> tuple[frozenset[int], ...]:
    """Drop every set contained in another; result sorted in tuple order."""
    uniq = set(edges)
    maximal = [
        e for e in uniq
        if not any(e < other for other in uniq)
    ]
    return tuple(sorted(maximal, key=lambda e: tuple(sorted(e))))


@dataclass(frozen=True)
class ExplicitHypergraph:
    """Downward-closed hypergraph given by its maximal edges (an antichain)."""

    ground: GroundSet
    maximal_edges: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen = set()
        for e in self.maximal_edges:
            self.ground.check_vertices(e)
            if e in seen:
                raise InputError(f"duplicate maximal edge {sorted(e)}")
            seen.add(e)
        for a in self.maximal_edges:
            for b in self.maximal_edges:
                if a is not b and a <= b:
                    raise InputError(
                        f"not an antichain: {sorted(a)} contained in {sorted(b)}"
                    )

    @classmethod
    def from_edges(cls, ground: GroundSet, edges: Iterable[Iterable[int]]) -> "ExplicitHypergraph":
        """Build from an arbitrary edge list, keeping only maximal ones."""
        sets = [ground.check_vertices(e) for e in edges]
        return cls(ground, antichain_reduce(sets))

    def maximal_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(e) for e in self.maximal_edges)

    def contains(self, subset: Iterable[int]) -> bool:
        """True iff ``subset`` lies in some maximal edge.

        The empty set is an edge whenever there is any maximal edge.
        """
        s = self.ground.check_vertices(subset)
        return any(s <= e for e in self.maximal_edges)

    def contains_mask(self, mask: int) -> bool:
        if mask >> self.ground.n:
            raise InputError("mask outside ground set")
        return any(mask & ~m == 0 for m in self.maximal_masks())

    def is_empty(self) -> bool:
        return not self.maximal_edges


def k_subsets(subset: Iterable[int], k: int) -> Iterator[frozenset[int]]:
    """All size-k subsets, in lexicographic order of sorted index tuples.

    k > |subset| yields nothing; k = 0 yields only the empty set.
    """
    verts = sorted(set(subset))
    if k < 0:
        raise InputError(f"k must be >= 0, got {k}")
    for combo in combinations(verts, k):
        yield frozenset(combo)


@dataclass(frozen=True)
class ColorClasses:
    """A tuple of k nonempty (not necessarily disjoint) vertex subsets."""

    classes: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.classes) < 1:
            raise InputError("need at least one color class")
        for i, c in enumerate(self.classes):
            if not c:
                raise InputError(f"color class {i} is empty")

    @classmethod
    def of(cls, *classes: Iterable[int]) -> "ColorClasses":
        return cls(tuple(frozenset(c) for c in classes))

    @property
    def k(self) -> int:
        return len(self.classes)


def colorful_selections(classes: ColorClasses) -> Iterator[frozenset[int]]:
    """Distinct sets reachable as images of choice maps, one vertex per class.

    A set F is a colorful selection iff some surjection phi: [k] -> F picks
    phi(i) from class i; enumerating the full choice product and collecting
    images yields exactly these. Overlapping classes can give |F| < k.
    Emitted without duplicates, in lexicographic order of sorted tuples.
    """
    seen: set[frozenset[int]] = set()
    for choice in product(*(sorted(c) for c in classes.classes)):
        seen.add(frozenset(choice))
    for f in sorted(seen, key=lambda s: tuple(sorted(s))):
        yield f
