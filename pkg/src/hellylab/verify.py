"""Verification of the three Helly-type numbers of a chain.

Everything here is exhaustive over the finite ground set (or over a stated
colorful-tuple universe) and emits machine-checkable certificates that are
re-validated against the chain oracle before being returned. Chains with an
inexact (Monte Carlo) backend only ever yield ``suspect`` certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import certificates as certs
from ._kernels import colorful_scan
from .bitsets import k_submasks, lex_less, mask_of, popcount, submasks, tuple_of
from .certificates import Certificate
from .chains import HypergraphChain
from .errors import InputError
from .hypergraphs import ColorClasses, colorful_selections


def _subset_mask(chain: HypergraphChain, subset) -> int:
    if subset is None:
        return chain.ground.full_mask
    return mask_of(chain.ground.check_vertices(subset))


def omega(chain: HypergraphChain, level: int, subset, h: int) -> int:
    """Size of the largest h-clique inside ``subset`` at ``level``.

    Sets of size < h are vacuous cliques, so the result is at least
    min(|subset|, h - 1).
    """
    return max_clique_in(chain, level, subset, h)[0]


def max_clique_in(
    chain: HypergraphChain, level: int, subset, h: int
) -> tuple[int, frozenset[int]]:
    """(size, witness) of the largest h-clique; lex-first among maxima."""
    smask = _subset_mask(chain, subset)
    table = chain.clique_table(level, h)
    best_size, best = -1, 0
    for m in submasks(smask):
        if table[m]:
            pc = popcount(m)
            if pc > best_size or (pc == best_size and lex_less(m, best)):
                best_size, best = pc, m
    return best_size, frozenset(tuple_of(best))


def largest_edge_within(
    chain: HypergraphChain, level: int, subset
) -> frozenset[int]:
    """Maximum-cardinality edge contained in ``subset``; lex-first among
    maxima. Returns the empty set when the level has no edges at all."""
    smask = _subset_mask(chain, subset)
    table = chain.level_table(level)
    if len(table.max_masks) == 0:
        return frozenset()
    best, best_size = 0, -1
    for mm in table.max_masks:
        cand = int(mm) & smask
        pc = popcount(cand)
        if pc > best_size or (pc == best_size and lex_less(cand, best)):
            best_size, best = pc, cand
    return frozenset(tuple_of(best))


def count_missing(chain: HypergraphChain, level: int, subset, r: int) -> int:
    """Number of size-r subsets of ``subset`` that are not edges at ``level``."""
    smask = _subset_mask(chain, subset)
    table = chain.level_table(level)
    return sum(1 for m in k_submasks(smask, r) if not table.edge_bm[m])


def helly_holds(chain: HypergraphChain, h: int, level: int) -> Certificate | None:
    """Check that every S with |S| >= h whose h-subsets are all edges at
    ``level`` is itself an edge at ``level + 1``; None means it holds.

    Returns the lexicographically first violating S otherwise.
    """
    if h < 1:
        raise InputError(f"h must be >= 1, got {h}")
    chain.check_window(level, level + 1)
    cliques = chain.clique_table(level, h)
    edges_hi = chain.level_table(level + 1).edge_bm
    violations = [
        m
        for m in range(1 << chain.n)
        if popcount(m) >= h and cliques[m] and not edges_hi[m]
    ]
    if not violations:
        return None
    first = min(violations, key=tuple_of)
    cert = certs.helly_violation(tuple_of(first), h, level)
    if not chain.exact:
        return certs.suspect("inexact (Monte Carlo) backend", cert)
    assert certs.revalidate(chain, cert)
    return cert


def min_helly_number(chain: HypergraphChain) -> int:
    """Least h that passes helly_holds at every adjacent level pair in the
    window; n + 1 if none does."""
    lo, hi = chain.window
    if hi - lo < 1:
        raise InputError("window too small: need at least two levels")
    for h in range(1, chain.n + 1):
        if all(helly_holds(chain, h, lvl) is None for lvl in range(lo, hi)):
            return h
    return chain.n + 1


def _decode_assignment(code: int, n: int, k: int) -> tuple[tuple[int, ...], ...]:
    base = k + 1
    classes: list[list[int]] = [[] for _ in range(k)]
    x = code
    for v in range(n):
        d = x % base
        x //= base
        if d > 0:
            classes[d - 1].append(v)
    return tuple(tuple(c) for c in classes)


@dataclass(frozen=True)
class ColorfulCheck:
    """Outcome of a colorful verification over a stated tuple universe."""

    status: str  # "ok" | "violation" | "partial" | "suspect"
    certificate: Certificate | None
    universe: str
    tuples_checked: int

    def ok(self) -> bool:
        return self.status == "ok"


def colorful_helly_holds(
    chain: HypergraphChain,
    k: int,
    level: int,
    class_universe: Sequence[Sequence[Iterable[int]]] | None = None,
    max_class_size: int | None = 3,
    budget: int = 0,
) -> ColorfulCheck:
    """Check Colorful Helly at ``k`` over a tuple universe.

    Default universe: unordered tuples of k pairwise-disjoint nonempty
    classes with class size <= ``max_class_size`` (None = unrestricted, the
    full disjoint universe). Alternatively pass an explicit list of class
    tuples (overlaps allowed there). A positive ``budget`` caps the number of
    tuples examined; exceeding it yields a partial result, never a silent
    truncation.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    chain.check_window(level, level + 1)

    if class_universe is not None:
        checked = 0
        for raw in class_universe:
            classes = ColorClasses.of(*raw)
            if classes.k != k:
                raise InputError(f"expected {k} classes, got {classes.k}")
            if budget > 0 and checked + 1 > budget:
                return ColorfulCheck(
                    "partial", None, f"explicit list (budget {budget})", checked
                )
            checked += 1
            hypothesis = all(
                chain.member(f, level) for f in colorful_selections(classes)
            )
            if hypothesis and not any(
                chain.member(c, level + 1) for c in classes.classes
            ):
                cert = certs.colorful_violation(classes.classes, level)
                if not chain.exact:
                    return ColorfulCheck(
                        "suspect",
                        certs.suspect("inexact (Monte Carlo) backend", cert),
                        "explicit list",
                        checked,
                    )
                assert certs.revalidate(chain, cert)
                return ColorfulCheck("violation", cert, "explicit list", checked)
        return ColorfulCheck("ok", None, "explicit list", checked)

    mcs = 0 if max_class_size in (None, 0) else int(max_class_size)
    universe = (
        "all disjoint tuples"
        if mcs == 0
        else f"disjoint tuples, class size <= {mcs}"
    )
    edge_lo = chain.level_table(level).edge_bm
    edge_hi = chain.level_table(level + 1).edge_bm
    status, code, checked = colorful_scan(
        edge_lo, edge_hi, chain.n, k, mcs, budget
    )
    status, code, checked = int(status), int(code), int(checked)
    if status == 2:
        return ColorfulCheck("partial", None, f"{universe} (budget {budget})", checked)
    if status == 1:
        cert = certs.colorful_violation(_decode_assignment(code, chain.n, k), level)
        if not chain.exact:
            return ColorfulCheck(
                "suspect",
                certs.suspect("inexact (Monte Carlo) backend", cert),
                universe,
                checked,
            )
        assert certs.revalidate(chain, cert)
        return ColorfulCheck("violation", cert, universe, checked)
    return ColorfulCheck("ok", None, universe, checked)


@dataclass(frozen=True)
class FractionalProfile:
    """Observed (alpha, beta) pair of one fractional-Helly check."""

    k: int
    level: int
    subset: tuple[int, ...]
    alpha: Fraction
    beta: Fraction
    largest_edge: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise InputError("alpha and beta must lie in [0, 1]")


def fractional_profile(
    chain: HypergraphChain, k: int, level: int, subset=None
) -> FractionalProfile:
    """alpha = fraction of k-subsets of S that are edges at ``level``;
    beta = |largest edge of level+1 inside S| / |S|."""
    chain.check_window(level, level + 1)
    smask = _subset_mask(chain, subset)
    size = popcount(smask)
    if size < k:
        raise InputError(f"|subset| = {size} < k = {k}")
    total = comb(size, k)
    missing = count_missing(chain, level, tuple_of(smask), k)
    edge = largest_edge_within(chain, level + 1, tuple_of(smask))
    return FractionalProfile(
        k=k,
        level=level,
        subset=tuple_of(smask),
        alpha=Fraction(total - missing, total),
        beta=Fraction(len(edge), size),
        largest_edge=tuple(sorted(edge)),
    )
