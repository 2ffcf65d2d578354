"""Chain constructors: geometric nerve and volume-threshold chains,
re-indexed (subsampled) chains, explicit chains from level lists, and seeded
synthetic chains."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import certificates as certs
from .chains import HypergraphChain
from .errors import ChainRejectedError, InputError
from .geometry import (
    Box,
    ConvexPolygon,
    ExactIntersections,
    HalfspaceBody,
    box_as_halfspace_body,
    polygon_as_halfspace_body,
)
from .hypergraphs import ExplicitHypergraph, GroundSet, antichain_reduce
from .montecarlo import mc_volume


@dataclass(frozen=True)
class MonteCarloBackend:
    samples: int
    confidence: float = 0.95
    seed: int = 0


@dataclass(frozen=True)
class QuantitativeChainSpec:
    """Chain whose level-l edges are subfamilies of intersection volume >= v^l."""

    bodies: tuple
    v: Fraction
    window: tuple[int, int]
    backend: str | MonteCarloBackend = "exact"

    def __post_init__(self):
        if not (0 < self.v < 1):
            raise InputError(f"v must be in (0, 1), got {self.v}")
        if not self.bodies:
            raise InputError("need one body per vertex")
        if self.backend == "exact":
            for b in self.bodies:
                if not isinstance(b, (Box, ConvexPolygon)):
                    raise InputError(
                        "exact backend supports boxes and polygons only"
                    )
        elif not isinstance(self.backend, MonteCarloBackend):
            raise InputError(f"unknown backend {self.backend!r}")


def _as_halfspace_body(b) -> HalfspaceBody:
    if isinstance(b, HalfspaceBody):
        return b
    if isinstance(b, Box):
        return box_as_halfspace_body(b)
    if isinstance(b, ConvexPolygon):
        return polygon_as_halfspace_body(b)
    raise InputError(f"not a convex body: {b!r}")


def _derived_seed(seed: int, mask: int) -> int:
    return int(np.random.SeedSequence([seed, mask]).generate_state(1, np.uint64)[0] >> 1)


def nerve_chain(
    bodies: Sequence[Box] | Sequence[ConvexPolygon],
    window: tuple[int, int] = (-4, 4),
    label: str = "nerve",
) -> HypergraphChain:
    """Constant chain: a subfamily is an edge iff its intersection is
    nonempty (exact test; measure-zero intersections count)."""
    cache = ExactIntersections(bodies)
    ground = GroundSet(len(bodies))
    return HypergraphChain(
        ground=ground,
        window=window,
        kind="implicit",
        member_fn=lambda mask, _level: cache.nonempty(mask),
        exact=True,
        label=label,
    )


def quantitative_chain(spec: QuantitativeChainSpec, label: str = "") -> HypergraphChain:
    """Edges at level l are the subfamilies with intersection volume >= v^l
    (inclusive threshold); monotone in l since 0 < v < 1. The empty subfamily
    is an edge at every level."""
    ground = GroundSet(len(spec.bodies))
    v = spec.v
    if spec.backend == "exact":
        cache = ExactIntersections(list(spec.bodies))

        def member(mask: int, level: int) -> bool:
            if mask == 0:
                return True
            return cache.volume(mask) >= v**level

        exact = True
    else:
        backend = spec.backend
        hbodies = [_as_halfspace_body(b) for b in spec.bodies]
        estimates: dict[int, Fraction] = {}

        def member(mask: int, level: int) -> bool:
            if mask == 0:
                return True
            est = estimates.get(mask)
            if est is None:
                chosen = [hbodies[i] for i in range(ground.n) if mask >> i & 1]
                result = mc_volume(
                    chosen,
                    backend.samples,
                    backend.confidence,
                    _derived_seed(backend.seed, mask),
                )
                est = Fraction(result.estimate)
                estimates[mask] = est
            return est >= v**level

        exact = False
    return HypergraphChain(
        ground=ground,
        window=spec.window,
        kind="implicit",
        member_fn=member,
        exact=exact,
        label=label or f"quantitative(v={v})",
    )


def subsampled_chain(
    chain: HypergraphChain, period: int, anchor: int = 0
) -> HypergraphChain:
    """Level l of the output is level anchor + period*l of the input."""
    if period < 1:
        raise InputError(f"period must be >= 1, got {period}")
    lo, hi = chain.window
    out_lo = -((anchor - lo) // period)
    out_hi = (hi - anchor) // period
    if out_lo > out_hi:
        raise InputError(
            f"subsampling with period {period}, anchor {anchor} exhausts the "
            f"window: need input levels {anchor + period * out_lo} or "
            f"{anchor + period * out_hi} inside [{lo}, {hi}]"
        )
    return HypergraphChain(
        ground=chain.ground,
        window=(out_lo, out_hi),
        kind="implicit",
        member_fn=lambda mask, level: chain.member_mask(mask, anchor + period * level),
        exact=chain.exact,
        label=f"{chain.label}/every-{period}(anchor={anchor})",
    )


def explicit_chain(
    levels: Sequence[ExplicitHypergraph], lmin: int = 0, label: str = "explicit"
) -> HypergraphChain:
    """Chain from per-level hypergraphs; validates monotonicity across
    consecutive levels (antichain is enforced per level at construction).

    Raises ChainRejectedError carrying the lexicographically first violating
    (edge, level) certificate.
    """
    if not levels:
        raise InputError("need at least one level")
    ground = levels[0].ground
    for hg in levels:
        if hg.ground != ground:
            raise InputError("all levels must share one ground set")
    for i in range(len(levels) - 1):
        nxt = levels[i + 1]
        for e in levels[i].maximal_edges:
            if not nxt.contains(e):
                raise ChainRejectedError(
                    certs.monotonicity_violation(e, lmin + i)
                )
    window = (lmin, lmin + len(levels) - 1)
    levels = tuple(levels)

    def member(mask: int, level: int) -> bool:
        return levels[level - lmin].contains_mask(mask)

    return HypergraphChain(
        ground=ground,
        window=window,
        kind="explicit",
        member_fn=member,
        exact=True,
        levels=levels,
        label=label,
    )


@dataclass(frozen=True)
class SyntheticChainSpec:
    """Seeded random explicit chain; each level's generator edges are merged
    with the previous level's maximal edges before antichain reduction, so
    monotonicity holds by construction."""

    n: int
    window: tuple[int, int]
    density: float | tuple[float, ...] = 0.1
    seed: int = 0

    def densities(self) -> list[float]:
        lo, hi = self.window
        count = hi - lo + 1
        if isinstance(self.density, tuple):
            if len(self.density) != count:
                raise InputError(
                    f"{len(self.density)} densities for {count} levels"
                )
            return list(self.density)
        return [float(self.density)] * count


def random_chain(spec: SyntheticChainSpec, label: str = "") -> HypergraphChain:
    if spec.n < 1:
        raise InputError("need at least one vertex")
    rng = random.Random(spec.seed)
    ground = GroundSet(spec.n)
    pool = list(range(1, 1 << spec.n))
    levels = []
    prev: tuple[frozenset[int], ...] = ()
    for dens in spec.densities():
        if not (0 <= dens <= 1):
            raise InputError(f"density must be in [0, 1], got {dens}")
        count = round(dens * len(pool))
        chosen = rng.sample(pool, count)
        edges = [frozenset(v for v in range(spec.n) if m >> v & 1) for m in chosen]
        maximal = antichain_reduce(list(prev) + edges)
        levels.append(ExplicitHypergraph(ground, maximal))
        prev = maximal
    return explicit_chain(
        levels, lmin=spec.window[0], label=label or f"synthetic(seed={spec.seed})"
    )


def bounded_size_chain(
    n: int, max_sizes: Sequence[int], lmin: int = 0, label: str = ""
) -> HypergraphChain:
    """Level i contains exactly the subsets of size <= max_sizes[i].

    With sizes that stay below n this plants genuine Colorful Helly
    violations (the diagonal tuple on the full vertex set), which makes it
    the standard planted instance for the constructive engine's tests.
    """
    ground = GroundSet(n)
    sizes = list(max_sizes)
    if any(b < a for a, b in zip(sizes, sizes[1:])):
        raise InputError("max_sizes must be nondecreasing")
    levels = []
    for s in sizes:
        if not (0 <= s <= n):
            raise InputError(f"size bound {s} outside [0, {n}]")
        maximal = [frozenset(c) for c in combinations(range(n), s)]
        levels.append(ExplicitHypergraph(ground, tuple(maximal)))
    return explicit_chain(levels, lmin=lmin, label=label or f"bounded-size{tuple(sizes)}")
