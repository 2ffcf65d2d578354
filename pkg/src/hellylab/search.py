"""Counterexample search for the open 2d-target questions.

Each trial draws a seeded instance, builds the volume-threshold chain for
every candidate v, and tests the targeted property. A finding is a
re-validated violation certificate together with the full instance; the
absence of findings is reported with the searched universe described, never
as evidence for the conjectured property. Monte Carlo-backed chains can only
produce suspect findings, which are segregated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .builders import (
    MonteCarloBackend,
    QuantitativeChainSpec,
    bounded_size_chain,
    quantitative_chain,
)
from .errors import InputError
from .formats import write_bodies, write_chain
from .geometry import random_boxes, random_polygons
from .parallel import pmap
from .verify import colorful_helly_holds, fractional_profile

GENERATORS = ("intervals", "boxes", "polygons", "planted")


@dataclass(frozen=True)
class SearchSpec:
    dimension: int
    target: int
    v_candidates: tuple[Fraction, ...]
    mode: str = "colorful"  # "colorful" | "fractional"
    generator: str = "intervals"
    n_bodies: int = 5
    scale: int = 4
    denominator: int = 8
    vertex_budget: int = 6
    window: tuple[int, int] = (0, 3)
    trials: int = 10
    seed: int = 0
    max_class_size: int | None = None
    budget: int = 0
    backend: str | MonteCarloBackend = "exact"

    def __post_init__(self):
        for v in self.v_candidates:
            if not (0 < v < 1):
                raise InputError(f"candidate v must be in (0, 1), got {v}")
        if self.trials < 0:
            raise InputError("trial budget must be >= 0")
        if self.mode not in ("colorful", "fractional"):
            raise InputError(f"unknown search mode {self.mode!r}")
        if self.generator not in GENERATORS:
            raise InputError(f"unknown generator {self.generator!r}")
        if self.backend == "exact" and self.generator != "planted":
            if self.dimension not in (1, 2):
                raise InputError(
                    "exact backend supports d in {1, 2} only; use a Monte "
                    "Carlo backend for d >= 3"
                )


@dataclass(frozen=True)
class Finding:
    trial: int
    v: Fraction
    level: int
    certificate: object
    instance: str
    suspect: bool


@dataclass
class SearchReport:
    spec: SearchSpec
    trials_run: int = 0
    tuples_checked: int = 0
    findings: list[Finding] = field(default_factory=list)
    profiles: list[dict] = field(default_factory=list)
    universe: str = ""
    notes: list[str] = field(default_factory=list)

    def exact_findings(self) -> list[Finding]:
        return [f for f in self.findings if not f.suspect]


def _trial_seed(seed: int, trial: int) -> int:
    return int(np.random.SeedSequence([seed, trial]).generate_state(1, np.uint64)[0] >> 1)


def _make_instance(spec: SearchSpec, trial: int):
    """Returns (bodies or None, planted chain or None, serialized instance)."""
    s = _trial_seed(spec.seed, trial)
    if spec.generator == "planted":
        sizes = [min(spec.target, spec.n_bodies - 1)] * (
            spec.window[1] - spec.window[0] + 1
        )
        chain = bounded_size_chain(spec.n_bodies, sizes, lmin=spec.window[0])
        return None, chain, write_chain(chain)
    if spec.generator == "polygons":
        bodies = random_polygons(
            spec.n_bodies, spec.vertex_budget, spec.scale, spec.denominator, seed=s
        )
    else:
        dim = 1 if spec.generator == "intervals" else spec.dimension
        bodies = random_boxes(
            spec.n_bodies, dim, spec.scale, spec.denominator, seed=s
        )
    return bodies, None, write_bodies(bodies)


def _run_trial(spec: SearchSpec, trial: int) -> dict:
    bodies, planted, instance = _make_instance(spec, trial)
    findings: list[Finding] = []
    profiles: list[dict] = []
    checked = 0
    for v in spec.v_candidates:
        if planted is not None:
            chain = planted
        else:
            chain = quantitative_chain(
                QuantitativeChainSpec(
                    bodies=tuple(bodies),
                    v=v,
                    window=spec.window,
                    backend=spec.backend,
                )
            )
        lo, hi = chain.window
        for level in range(lo, hi):
            if spec.mode == "colorful":
                check = colorful_helly_holds(
                    chain,
                    spec.target,
                    level,
                    max_class_size=spec.max_class_size,
                    budget=spec.budget,
                )
                checked += check.tuples_checked
                if check.status in ("violation", "suspect") and check.certificate:
                    findings.append(
                        Finding(
                            trial=trial,
                            v=v,
                            level=level,
                            certificate=check.certificate,
                            instance=instance,
                            suspect=check.status == "suspect",
                        )
                    )
            else:
                if chain.n >= spec.target:
                    prof = fractional_profile(chain, spec.target, level)
                    profiles.append(
                        {
                            "trial": trial,
                            "v": v,
                            "level": level,
                            "alpha": prof.alpha,
                            "beta": prof.beta,
                            "largest_edge": prof.largest_edge,
                        }
                    )
        if planted is not None:
            break  # planted chains do not depend on v
    return {"findings": findings, "profiles": profiles, "checked": checked}


def search_counterexample(spec: SearchSpec, workers: int = 1) -> SearchReport:
    report = SearchReport(spec=spec)
    if spec.mode == "colorful":
        mcs = spec.max_class_size
        report.universe = (
            "all disjoint tuples" if mcs in (None, 0)
            else f"disjoint tuples, class size <= {mcs}"
        )
        if spec.budget > 0:
            report.universe += f" (budget {spec.budget} per level)"
    else:
        report.universe = "full-ground-set fractional profiles"
        report.notes.append(
            "fractional mode reports observed (alpha, beta) pairs; a single "
            "finite instance cannot refute the existence of a beta function"
        )
    results = pmap(lambda t: _run_trial(spec, t), range(spec.trials), workers)
    for res in results:
        report.findings.extend(res["findings"])
        report.profiles.extend(res["profiles"])
        report.tuples_checked += res["checked"]
    report.trials_run = spec.trials
    if not report.findings:
        report.notes.append(
            f"no findings over {spec.trials} trials; universe searched: "
            f"{report.universe}"
        )
    return report
