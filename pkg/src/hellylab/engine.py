"""Constructive machinery turning colorful-Helly hypotheses into checkable
objects: maximal disjoint missing-edge families with their counting bounds,
the neighborhood refinement step, the iterated large-edge extraction, and the
stability margin for almost-complete hypothesis fractions.

Every returned object re-validates against the chain oracle; when a desk-scale
instance is too small for a pigeonhole step to produce its object, the run
aborts cleanly with a named reason instead of fabricating one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import certificates as certs
from .chains import HypergraphChain
from .errors import ExtractionFailedError, InputError
from .verify import (
    count_missing,
    fractional_profile,
    largest_edge_within,
    max_clique_in,
    omega,
)

# ---------------------------------------------------------------------------
# disjoint missing-edge families and the two counting bounds


@dataclass(frozen=True)
class MissingEdgeFamily:
    """Greedy-maximal family of pairwise disjoint size-r non-edges of one
    level inside a host set, together with the clique number that lower
    bounds its size: t * r >= |host| - omega_r."""

    level: int
    size: int
    host: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    clique_number: int

    @property
    def t(self) -> int:
        return len(self.members)

    def bound_holds(self) -> bool:
        return self.t * self.size >= len(self.host) - self.clique_number

    def revalidate(self, chain: HypergraphChain) -> bool:
        host = set(self.host)
        used: set[int] = set()
        for m in self.members:
            if len(m) != self.size or not set(m) <= host:
                return False
            if used & set(m):
                return False
            if chain.member(m, self.level):
                return False
            used |= set(m)
        rest = sorted(host - used)
        for cand in combinations(rest, self.size):
            if not chain.member(cand, self.level):
                return False  # not maximal
        return True


def max_disjoint_missing(
    chain: HypergraphChain, level: int, subset, r: int
) -> MissingEdgeFamily:
    """Greedy over size-r subsets in lexicographic order: collect every
    non-edge disjoint from those already chosen. Greedy maximality is all the
    counting bound needs."""
    if r < 1:
        raise InputError(f"r must be >= 1, got {r}")
    chain.check_window(level)
    host = tuple(sorted(chain.ground.check_vertices(
        subset if subset is not None else range(chain.n)
    )))
    table = chain.level_table(level)
    chosen: list[tuple[int, ...]] = []
    used: set[int] = set()
    for cand in combinations(host, r):
        if used & set(cand):
            continue
        mask = 0
        for v in cand:
            mask |= 1 << v
        if not table.edge_bm[mask]:
            chosen.append(cand)
            used |= set(cand)
    return MissingEdgeFamily(
        level=level,
        size=r,
        host=host,
        members=tuple(chosen),
        clique_number=omega(chain, level, host, r),
    )


def missing_bound_same_arity(
    chain: HypergraphChain, level: int, subset, k: int
) -> tuple[int, int]:
    """Exact count of missing k-subsets at ``level`` and its guaranteed lower
    bound C(floor((|S| - omega_k at level+1)/k), k).

    The bound is a theorem only on chains whose Colorful Helly property holds
    at k for the (level, level+1) pair; callers verify that separately.
    """
    chain.check_window(level, level + 1)
    host = tuple(sorted(chain.ground.check_vertices(
        subset if subset is not None else range(chain.n)
    )))
    missing = count_missing(chain, level, host, k)
    om = omega(chain, level + 1, host, k)
    m = (len(host) - om) // k
    bound = comb(m, k) if m >= k else 0
    return missing, bound


def missing_bound_cross_arity(
    chain: HypergraphChain, level: int, subset, h: int, k: int
) -> tuple[int, Fraction]:
    """Exact count of missing h-subsets at ``level`` and the bound
    C(k,h)^-1 * C(floor((|S| - omega_h at level+2)/h), h).

    Guaranteed on chains with Helly number h and Colorful Helly number k
    (h <= k) on the touched levels.
    """
    if h > k:
        raise InputError(f"h = {h} must be <= k = {k}")
    chain.check_window(level, level + 1, level + 2)
    host = tuple(sorted(chain.ground.check_vertices(
        subset if subset is not None else range(chain.n)
    )))
    missing = count_missing(chain, level, host, h)
    om = omega(chain, level + 2, host, h)
    m = (len(host) - om) // h
    bound = Fraction(comb(m, h), comb(k, h)) if m >= h else Fraction(0)
    return missing, bound


# ---------------------------------------------------------------------------
# neighborhood refinement


@dataclass(frozen=True)
class NeighborhoodFamily:
    """A family of equal-size subsets of a host set."""

    arity: int
    host: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    level: int | None = None

    def __post_init__(self):
        host = set(self.host)
        seen = set()
        for m in self.members:
            if len(m) != self.arity:
                raise InputError(f"member {m} has arity {len(m)} != {self.arity}")
            if not set(m) <= host:
                raise InputError(f"member {m} leaves the host set")
            if m in seen:
                raise InputError(f"duplicate member {m}")
            seen.add(m)

    def member_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.members)

    def density(self) -> Fraction:
        return Fraction(len(self.members), comb(len(self.host), self.arity))


def extension_vertices(A: Iterable[int], family: NeighborhoodFamily) -> frozenset[int]:
    """Vertices v of the host with A + {v} in the family; |A| must be
    family.arity - 1."""
    a = tuple(sorted(A))
    if len(a) != family.arity - 1:
        raise InputError(
            f"|A| = {len(a)} but family arity is {family.arity}"
        )
    members = family.member_set()
    return frozenset(
        v for v in family.host
        if v not in a and tuple(sorted(a + (v,))) in members
    )


@dataclass(frozen=True)
class RefinementStep:
    """Output of one pigeonhole refinement round."""

    family: NeighborhoodFamily  # arity i-1
    missing: tuple[int, ...]  # size-k non-edge at t_level
    pair_count: int
    t_level: int
    c: Fraction
    closed_form_bound: Fraction  # (c/12k^2)^k * C(n, i-1)
    closed_form_ok: bool


def refine_family(
    chain: HypergraphChain,
    t_level: int,
    c: Fraction,
    family: NeighborhoodFamily,
    k: int,
) -> RefinementStep:
    """From a dense arity-i family, extract an arity-(i-1) family and a
    size-k non-edge M of level ``t_level`` with A + {v} in the input family
    for every output A and v in M.

    Pairs (A, M) with M a missing k-subset of the extension neighborhood of A
    are counted exactly; M is chosen to maximize its number of partners
    (ties to the lexicographically first), and the partners form the output
    family. The closed-form density bound is reported, and flagged rather
    than enforced when the instance is too small for it.
    """
    chain.check_window(t_level, t_level + 1)
    n = len(family.host)
    i = family.arity
    if i < 1:
        raise InputError("family arity must be >= 1")
    if Fraction(len(family.members)) < c * comb(n, i):
        raise InputError(
            f"hypothesis failed: |F| = {len(family.members)} < c * C({n},{i}) "
            f"= {c * comb(n, i)}"
        )
    om = omega(chain, t_level + 1, family.host, k)
    if Fraction(om) > c * n / 2:
        raise InputError(
            f"hypothesis failed: omega_k at level {t_level + 1} is {om} "
            f"> c*n/2 = {c * n / 2}"
        )
    table = chain.level_table(t_level)
    partners: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    pair_count = 0
    for a in combinations(family.host, i - 1):
        gamma = sorted(extension_vertices(a, family))
        for m in combinations(gamma, k):
            mask = 0
            for v in m:
                mask |= 1 << v
            if not table.edge_bm[mask]:
                partners.setdefault(m, []).append(a)
                pair_count += 1
    if not partners:
        raise ExtractionFailedError(
            "no missing k-subset inside any extension neighborhood"
        )
    best_count = max(len(v) for v in partners.values())
    best = min(m for m, v in partners.items() if len(v) == best_count)
    out = NeighborhoodFamily(
        arity=i - 1,
        host=family.host,
        members=tuple(sorted(partners[best])),
        level=family.level,
    )
    member_set = family.member_set()
    for a in out.members:
        for v in best:
            assert tuple(sorted(a + (v,))) in member_set
    bound = (c / (12 * k * k)) ** k * comb(n, i - 1)
    return RefinementStep(
        family=out,
        missing=best,
        pair_count=pair_count,
        t_level=t_level,
        c=c,
        closed_form_bound=bound,
        closed_form_ok=Fraction(len(out.members)) >= bound,
    )


# ---------------------------------------------------------------------------
# guaranteed fraction and large-edge extraction


def refinement_map(x: Fraction, k: int) -> Fraction:
    """One refinement round shrinks a density x to (x / 12k^2)^k."""
    return (Fraction(x) / (12 * k * k)) ** k


def guaranteed_fraction(alpha: Fraction, k: int) -> Fraction:
    """Edge fraction guaranteed from hypothesis fraction alpha at arity k:
    k - 1 applications of the refinement map."""
    if not (0 < alpha < 1):
        raise InputError(f"alpha must be in (0, 1), got {alpha}")
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    x = Fraction(alpha)
    for _ in range(k - 1):
        x = refinement_map(x, k)
    return x


@dataclass(frozen=True)
class RoundRecord:
    round: int
    arity_in: int
    t_level: int
    c: Fraction
    family_in: int
    family_out: int | None
    missing: tuple[int, ...] | None
    pair_count: int | None
    closed_form_ok: bool | None
    note: str = ""


LARGE_EDGE = "large-edge"
WITNESS = "contradiction-witness"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ExtractionOutcome:
    kind: str
    reason: str
    alpha_observed: Fraction
    beta: Fraction
    target: Fraction
    reachable: bool  # True iff the run got past the direct short-circuit
    level: int | None = None
    large_edge: tuple[int, ...] | None = None
    witness: tuple[tuple[int, ...], ...] | None = None
    rounds: tuple[RoundRecord, ...] = ()

    def revalidate(self, chain: HypergraphChain, subset=None) -> bool:
        n = len(tuple(subset)) if subset is not None else chain.n
        if self.kind == LARGE_EDGE:
            return (
                chain.member(self.large_edge, self.level)
                and Fraction(len(self.large_edge)) >= self.beta * n
            )
        if self.kind == WITNESS:
            cert = certs.colorful_violation(self.witness, self.level)
            return certs.revalidate(chain, cert)
        return False

    def transcript(self) -> str:
        lines = [
            f"outcome {self.kind} ({self.reason}); alpha={self.alpha_observed} "
            f"beta={self.beta} target={self.target} "
            f"reachable={self.reachable} level={self.level}"
        ]
        if self.large_edge is not None:
            lines.append("large edge: " + " ".join(map(str, self.large_edge)))
        if self.witness is not None:
            for i, cls in enumerate(self.witness):
                lines.append(f"class {i}: " + " ".join(map(str, cls)))
        for r in self.rounds:
            lines.append(
                f"round {r.round}: arity {r.arity_in} t={r.t_level} c={r.c} "
                f"|F_in|={r.family_in} |F_out|={r.family_out} "
                f"M={r.missing} pairs={r.pair_count} "
                f"closed_form_ok={r.closed_form_ok} {r.note}".rstrip()
            )
        return "\n".join(lines)


def extract_large_edge(
    chain: HypergraphChain,
    level: int,
    subset,
    k: int,
    alpha: Fraction,
    target_fraction: Fraction | None = None,
) -> ExtractionOutcome:
    """Iterated refinement: either a large edge at level + k + 1 (size at
    least beta * |S| for beta = guaranteed_fraction(alpha_observed, k)), or a
    re-validated Colorful Helly violation, or a clean abort.

    The run short-circuits as soon as a large enough edge exists; if instead
    a large clique exists whose lift fails, the diagonal tuple on that clique
    is already a genuine colorful violation and is returned. With the exact
    recurrence, beta*|S| < 1 at desk scale, so the direct branch fires on any
    chain satisfying the alpha precondition and the violation branch is
    unreachable; ``target_fraction`` raises the demanded edge fraction (never
    below beta) so planted violations become reachable. ``reachable`` in the
    outcome records whether the run got past the direct short-circuit.
    """
    if k < 1:
        raise InputError(f"k must be >= 1, got {k}")
    if not (0 < alpha < 1):
        raise InputError(f"alpha must be in (0, 1), got {alpha}")
    chain.check_window(level, level + k + 1)
    host = tuple(sorted(chain.ground.check_vertices(
        subset if subset is not None else range(chain.n)
    )))
    n = len(host)
    prof = fractional_profile(chain, k, level, host)
    if prof.alpha < alpha:
        raise InputError(
            f"hypothesis failed: observed alpha {prof.alpha} < required {alpha}"
        )
    alphas = [prof.alpha]
    for _ in range(k - 1):
        alphas.append(refinement_map(alphas[-1], k))
    beta = alphas[-1]
    goal = beta if target_fraction is None else max(beta, Fraction(target_fraction))
    target = goal * n
    rounds: list[RoundRecord] = []

    def large(edge, reason, reachable) -> ExtractionOutcome:
        out = ExtractionOutcome(
            kind=LARGE_EDGE,
            reason=reason,
            alpha_observed=prof.alpha,
            beta=beta,
            target=goal,
            reachable=reachable,
            level=level + k + 1,
            large_edge=tuple(sorted(edge)),
            rounds=tuple(rounds),
        )
        assert out.revalidate(chain, host)
        return out

    def witness(classes, at_level, reason) -> ExtractionOutcome:
        out = ExtractionOutcome(
            kind=WITNESS,
            reason=reason,
            alpha_observed=prof.alpha,
            beta=beta,
            target=goal,
            reachable=True,
            level=at_level,
            witness=tuple(tuple(sorted(c)) for c in classes),
            rounds=tuple(rounds),
        )
        if not out.revalidate(chain, host):
            return ExtractionOutcome(
                kind=INCONCLUSIVE,
                reason=f"witness failed re-validation ({reason})",
                alpha_observed=prof.alpha,
                beta=beta,
                target=goal,
                reachable=True,
                rounds=tuple(rounds),
            )
        return out

    def inconclusive(reason) -> ExtractionOutcome:
        return ExtractionOutcome(
            kind=INCONCLUSIVE,
            reason=reason,
            alpha_observed=prof.alpha,
            beta=beta,
            target=goal,
            reachable=True,
            rounds=tuple(rounds),
        )

    top_edge = largest_edge_within(chain, level + k + 1, host)
    if Fraction(len(top_edge)) >= target:
        return large(
            top_edge, "direct: a large enough edge already exists", reachable=False
        )

    family = NeighborhoodFamily(
        arity=k,
        host=host,
        members=tuple(
            m for m in combinations(host, k) if chain.member(m, level)
        ),
        level=level,
    )
    missing_sets: list[tuple[int, ...]] = []
    for j in range(1, k):
        i = k - j + 1
        t = level + k - j
        c = alphas[j - 1]
        clique_size, clique = max_clique_in(chain, t + 1, host, k)
        if Fraction(clique_size) >= target and clique_size >= k:
            if chain.member(clique, level + k + 1):
                return large(clique, f"clique at level {t + 1} lifts to an edge",
                             reachable=True)
            return witness(
                (tuple(sorted(clique)),) * k,
                t + 1,
                f"diagonal tuple on a clique of level {t + 1} whose lift fails",
            )
        if family.density() < c:
            rounds.append(RoundRecord(j, i, t, c, len(family.members), None,
                                      None, None, None, "density below c"))
            return inconclusive(
                f"family density {family.density()} fell below alpha_{j - 1} = {c}"
            )
        try:
            step = refine_family(chain, t, c, family, k)
        except (InputError, ExtractionFailedError) as e:
            rounds.append(RoundRecord(j, i, t, c, len(family.members), None,
                                      None, None, None, str(e)))
            return inconclusive(str(e))
        rounds.append(
            RoundRecord(
                j, i, t, c, len(family.members), len(step.family.members),
                step.missing, step.pair_count, step.closed_form_ok,
            )
        )
        family = step.family
        missing_sets.append(step.missing)

    support = tuple(sorted({v for m in family.members for v in m}))
    final_missing = None
    for cand in combinations(support, k):
        if not chain.member(cand, level + 1):
            final_missing = cand
            break
    if final_missing is not None:
        return witness(
            tuple(missing_sets) + (final_missing,),
            level,
            "refinement rounds completed",
        )
    if Fraction(len(support)) >= target and chain.member(support, level + k + 1):
        return large(support, "refined support is itself a large edge",
                     reachable=True)
    return inconclusive(
        "no missing k-subset in the refined support; the colorful property "
        "is witnessed to hold on every tuple the construction reaches"
    )


# ---------------------------------------------------------------------------
# stability


def stability_delta(epsilon: Fraction, h: int, k: int, n: int) -> Fraction:
    """Guaranteed missing-h-edge fraction when no edge three levels up covers
    a (1 - epsilon) share of the host: C(floor(eps*n/h), h) / (C(k,h)*C(n,h)).

    Zero when the floor drops below h (the binomial is empty).
    """
    epsilon = Fraction(epsilon)
    if not (0 < epsilon <= 1):
        raise InputError(f"epsilon must be in (0, 1], got {epsilon}")
    if not (1 <= h <= k <= n):
        raise InputError(f"need 1 <= h <= k <= n, got h={h} k={k} n={n}")
    m = int(epsilon * n / h)  # floor: Fraction.__int__ truncates toward zero
    if m < h:
        return Fraction(0)
    return Fraction(comb(m, h), comb(k, h) * comb(n, h))


@dataclass(frozen=True)
class StabilityReport:
    h: int
    k: int
    level: int
    subset: tuple[int, ...]
    epsilon: Fraction
    largest_edge: tuple[int, ...]
    edge_fraction: Fraction
    missing_fraction: Fraction
    delta: Fraction
    status: str  # "not-applicable" | "consistent" | "violation" | "premise-failure" | "suspect"
    premises_verified: bool
    note: str = ""


def stability_check(
    chain: HypergraphChain,
    h: int,
    k: int,
    level: int,
    subset,
    epsilon: Fraction,
    premises_verified: bool = False,
) -> StabilityReport:
    """Contrapositive check: if the largest edge of level+3 inside S covers
    less than (1 - epsilon)|S|, then the missing h-edge fraction at ``level``
    must reach stability_delta(epsilon, h, k, |S|).

    The inequality is a theorem only for chains with Helly number h and
    Colorful Helly number k; if the caller has not verified those premises,
    a failed inequality triggers premise verification and is reported as
    ``premise-failure`` when they do not hold.
    """
    epsilon = Fraction(epsilon)
    chain.check_window(level, level + 3)
    host = tuple(sorted(chain.ground.check_vertices(
        subset if subset is not None else range(chain.n)
    )))
    n = len(host)
    edge = largest_edge_within(chain, level + 3, host)
    edge_fraction = Fraction(len(edge), n)
    missing_fraction = Fraction(count_missing(chain, level, host, h), comb(n, h))
    delta = stability_delta(epsilon, h, k, n)
    common = dict(
        h=h, k=k, level=level, subset=host, epsilon=epsilon,
        largest_edge=tuple(sorted(edge)), edge_fraction=edge_fraction,
        missing_fraction=missing_fraction, delta=delta,
        premises_verified=premises_verified,
    )
    if edge_fraction >= 1 - epsilon:
        return StabilityReport(status="not-applicable", **common)
    if missing_fraction >= delta:
        return StabilityReport(status="consistent", **common)
    if not chain.exact:
        return StabilityReport(
            status="suspect", note="inexact (Monte Carlo) backend", **common
        )
    if not premises_verified:
        from .verify import colorful_helly_holds, helly_holds

        lo, hi = chain.window
        for lvl in range(lo, hi):
            if helly_holds(chain, h, lvl) is not None:
                return StabilityReport(
                    status="premise-failure",
                    note=f"Helly at h={h} fails at level {lvl}",
                    **common,
                )
            check = colorful_helly_holds(chain, k, lvl, max_class_size=None)
            if not check.ok():
                return StabilityReport(
                    status="premise-failure",
                    note=f"Colorful Helly at k={k} fails at level {lvl}",
                    **common,
                )
    return StabilityReport(status="violation", **common)
