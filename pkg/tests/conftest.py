"""Shared fixtures, instance factories, and independent brute-force oracles.

The oracles here deliberately avoid the package's bitmap/kernel machinery:
they enumerate subsets directly against the chain membership oracle (or the
maximal-edge containment test), so verifier results are checked by a second
route.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import settings

import hellylab as hl
from hellylab.hypergraphs import ExplicitHypergraph, GroundSet

settings.register_profile("lab", deadline=None, derandomize=True, max_examples=60)
settings.load_profile("lab")


# ---------------------------------------------------------------------------
# instance factories


def random_hypergraph(n: int, seed: int, max_edges: int = 6) -> ExplicitHypergraph:
    rng = random.Random(seed)
    g = GroundSet(n)
    count = rng.randint(1, max_edges)
    edges = []
    for _ in range(count):
        size = rng.randint(1, n)
        edges.append(frozenset(rng.sample(range(n), size)))
    return ExplicitHypergraph.from_edges(g, edges)


def interval_chain(
    n: int = 6,
    seed: int = 0,
    v: Fraction = Fraction(1, 2),
    window: tuple[int, int] = (0, 3),
    scale: int = 3,
    den: int = 4,
    min_width: Fraction | None = Fraction(1, 2),
) -> hl.HypergraphChain:
    ivs = hl.random_boxes(n, 1, scale=scale, denominator=den, seed=seed,
                          min_width=min_width)
    return hl.quantitative_chain(
        hl.QuantitativeChainSpec(bodies=tuple(ivs), v=v, window=window)
    )


def nested_chain(n: int, levels: int, seed: int) -> hl.HypergraphChain:
    """Single nested maximal edge per level: Helly and colorful number 1."""
    rng = random.Random(seed)
    g = GroundSet(n)
    cur = set(rng.sample(range(n), rng.randint(1, max(1, n // 2))))
    hgs = []
    for _ in range(levels):
        hgs.append(ExplicitHypergraph(g, (frozenset(cur),)))
        for vtx in range(n):
            if vtx not in cur and rng.random() < 0.4:
                cur.add(vtx)
    return hl.explicit_chain(hgs)


def k44_chain(levels: int = 4) -> hl.HypergraphChain:
    """Constant chain on the complete bipartite pair set K_{4,4}: dense,
    triangle-free, and a genuine colorful violation at k=2."""
    g = GroundSet(8)
    edges = tuple(
        frozenset((a, b)) for a in range(4) for b in range(4, 8)
    )
    hg = ExplicitHypergraph(g, edges)
    return hl.explicit_chain([hg] * levels)


# ---------------------------------------------------------------------------
# brute-force oracles (second route; no bitmaps, no kernels)


def brute_omega(chain, level, subset, h) -> int:
    verts = sorted(subset)
    best = 0
    for size in range(len(verts) + 1):
        for cand in combinations(verts, size):
            if size <= h - 1 or all(
                chain.member(t, level) for t in combinations(cand, h)
            ):
                best = max(best, size)
    return best


def brute_largest_edge(chain, level, subset) -> frozenset:
    verts = sorted(subset)
    best: tuple = ()
    for size in range(len(verts), -1, -1):
        for cand in combinations(verts, size):
            if chain.member(cand, level):
                return frozenset(cand)
    return frozenset(best)


def brute_alpha(chain, level, subset, k) -> Fraction:
    verts = sorted(subset)
    total = hits = 0
    for cand in combinations(verts, k):
        total += 1
        hits += chain.member(cand, level)
    return Fraction(hits, total)


def brute_helly_ok(chain, h, level) -> bool:
    n = chain.n
    for size in range(h, n + 1):
        for cand in combinations(range(n), size):
            if all(chain.member(t, level) for t in combinations(cand, h)):
                if not chain.member(cand, level + 1):
                    return False
    return True


def disjoint_tuples(n, k, max_class_size=None):
    """All unordered tuples of k disjoint nonempty classes over range(n)."""
    base = k + 1
    for code in range(base**n):
        x = code
        classes = [[] for _ in range(k)]
        next_label = 0
        ok = True
        for v in range(n):
            d = x % base
            x //= base
            if d:
                j = d - 1
                if j > next_label:
                    ok = False
                    break
                if j == next_label:
                    next_label += 1
                classes[j].append(v)
        if not ok or next_label != k:
            continue
        if max_class_size and any(len(c) > max_class_size for c in classes):
            continue
        yield tuple(tuple(c) for c in classes)


def brute_colorful_ok(chain, k, level, max_class_size=None) -> bool:
    for classes in disjoint_tuples(chain.n, k, max_class_size):
        hypothesis = all(
            chain.member(frozenset(pick), level) for pick in product(*classes)
        )
        if hypothesis and not any(chain.member(c, level + 1) for c in classes):
            return False
    return True


@pytest.fixture
def intervals_chain():
    return interval_chain(n=6, seed=11)
