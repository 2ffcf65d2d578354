"""Monotone chains of downward-closed hypergraphs on a finite level window.

A chain exposes a membership oracle ``member(S, level)`` over an inclusive
integer window. Levels grow: every edge at level l is an edge at level l+1.
Verifiers work on per-level bitmask tables (``LevelTable``) materialized from
the oracle; materialization is capped at ``MATERIALIZE_MAX`` vertices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import certificates as certs
from ._kernels import clique_bitmap, edge_bitmap
from .bitsets import mask_of
from .certificates import Certificate
from .errors import InputError
from .hypergraphs import ExplicitHypergraph, GroundSet

MATERIALIZE_MAX = 16


@dataclass(frozen=True)
class LevelTable:
    """Dense view of one level: edge bitmap over all 2^n masks + maximal masks."""

    n: int
    edge_bm: np.ndarray
    max_masks: np.ndarray


def _maximal_from_bitmap(edge_bm: np.ndarray, n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    not_maximal = np.zeros(1 << n, dtype=np.bool_)
    for b in range(n):
        lacks = (masks >> b) & 1 == 0
        not_maximal |= lacks & edge_bm[masks | (1 << b)]
    return masks[edge_bm & ~not_maximal]


@dataclass
class HypergraphChain:
    """A chain, given by a deterministic (mask, level) -> bool oracle.

    ``kind`` is "explicit" (one ExplicitHypergraph per level, exhaustively
    checkable) or "implicit" (geometric or synthetic oracle). ``exact`` is
    False for Monte Carlo-backed membership; verifiers then only ever emit
    ``suspect`` certificates.
    """

    ground: GroundSet
    window: tuple[int, int]
    kind: str
    member_fn: Callable[[int, int], bool]
    exact: bool = True
    levels: tuple[ExplicitHypergraph, ...] | None = None
    label: str = ""
    _tables: dict = field(default_factory=dict, repr=False)
    _cliques: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        lo, hi = self.window
        if lo > hi:
            raise InputError(f"empty level window [{lo}, {hi}]")
        if self.kind not in ("explicit", "implicit"):
            raise InputError(f"unknown chain kind {self.kind!r}")

    @property
    def n(self) -> int:
        return self.ground.n

    def check_window(self, *levels: int) -> None:
        lo, hi = self.window
        for lvl in levels:
            if not (lo <= lvl <= hi):
                raise InputError(f"level {lvl} outside window [{lo}, {hi}]")

    def member_mask(self, mask: int, level: int) -> bool:
        self.check_window(level)
        if mask >> self.n:
            raise InputError("mask outside ground set")
        table = self._tables.get(level)
        if table is not None:
            return bool(table.edge_bm[mask])
        return bool(self.member_fn(mask, level))

    def member(self, subset: Iterable[int], level: int) -> bool:
        s = self.ground.check_vertices(subset)
        return self.member_mask(mask_of(s), level)

    def level_table(self, level: int) -> LevelTable:
        self.check_window(level)
        table = self._tables.get(level)
        if table is None:
            if self.levels is not None:
                lo = self.window[0]
                masks = np.asarray(
                    self.levels[level - lo].maximal_masks(), dtype=np.int64
                )
                bm = edge_bitmap(masks, self.n)
            else:
                if self.n > MATERIALIZE_MAX:
                    raise InputError(
                        f"cannot materialize implicit chain with n={self.n} "
                        f"(> {MATERIALIZE_MAX}); use a smaller ground set"
                    )
                bm = np.zeros(1 << self.n, dtype=np.bool_)
                for m in range(1 << self.n):
                    bm[m] = self.member_fn(m, level)
                masks = _maximal_from_bitmap(bm, self.n)
            table = LevelTable(self.n, bm, masks)
            self._tables[level] = table
        return table

    def clique_table(self, level: int, h: int) -> np.ndarray:
        """Bitmap of h-cliques at a level (vacuous below size h)."""
        if h < 1:
            raise InputError(f"clique arity must be >= 1, got {h}")
        key = (level, h)
        bm = self._cliques.get(key)
        if bm is None:
            bm = clique_bitmap(self.level_table(level).edge_bm, self.n, h)
            self._cliques[key] = bm
        return bm


def constant_chain(
    hg: ExplicitHypergraph, window: tuple[int, int], label: str = ""
) -> HypergraphChain:
    """The same hypergraph at every level."""
    levels = tuple(hg for _ in range(window[0], window[1] + 1))
    return HypergraphChain(
        ground=hg.ground,
        window=window,
        kind="explicit",
        member_fn=lambda m, _l: hg.contains_mask(m),
        levels=levels,
        label=label or "constant",
    )


def _random_submask(rng: random.Random, mask: int) -> int:
    keep = rng.getrandbits(mask.bit_length()) if mask else 0
    return mask & keep


def validate_chain(
    chain: HypergraphChain, sample_budget: int = 10000, seed: int = 0
) -> Certificate | None:
    """Check the chain axioms; None means ok.

    Explicit chains are checked exhaustively over maximal edges (downward
    closure is structural, so monotonicity needs only containment of each
    maximal edge in some maximal edge one level up, plus the antichain
    property). Implicit chains are checked on a seeded random sample of
    (subset, level) pairs: monotonicity into the next level and downward
    closure to a random subset. Violations on inexact chains are reported
    as ``suspect``.
    """
    lo, hi = chain.window

    def emit(cert: Certificate) -> Certificate:
        if not chain.exact:
            return certs.suspect("inexact (Monte Carlo) backend", cert)
        return cert

    if chain.kind == "explicit" and chain.levels is not None:
        for lvl_i, hg in enumerate(chain.levels):
            level = lo + lvl_i
            for a in hg.maximal_edges:
                for b in hg.maximal_edges:
                    if a is not b and a <= b:
                        return emit(certs.antichain_violation(a, b, level))
            if level < hi:
                nxt = chain.levels[lvl_i + 1]
                for e in hg.maximal_edges:
                    if not nxt.contains(e):
                        return emit(certs.monotonicity_violation(e, level))
        return None

    rng = random.Random(seed)
    n = chain.n
    for _ in range(sample_budget):
        mask = rng.getrandbits(n) if n else 0
        level = rng.randint(lo, hi)
        is_edge = chain.member_mask(mask, level)
        if is_edge and level < hi and not chain.member_mask(mask, level + 1):
            return emit(
                certs.monotonicity_violation(
                    [v for v in range(n) if mask >> v & 1], level
                )
            )
        if is_edge:
            sub = _random_submask(rng, mask)
            if not chain.member_mask(sub, level):
                return emit(
                    certs.downward_closure_violation(
                        [v for v in range(n) if mask >> v & 1],
                        [v for v in range(n) if sub >> v & 1],
                        level,
                    )
                )
    return None
