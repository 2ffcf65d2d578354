"""Machine-checkable certificates emitted by validators, verifiers and the
constructive engine.

Every certificate can be re-validated against the chain oracle it came from;
verifiers re-check before emitting. Certificates produced from Monte
Carlo-backed (inexact) chains are always of kind ``suspect``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

MONOTONICITY = "monotonicity-violation"
DOWNWARD_CLOSURE = "downward-closure-violation"
ANTICHAIN = "antichain-violation"
HELLY = "helly-violation"
COLORFUL = "colorful-violation"
FRACTIONAL_REPORT = "fractional-report"
SUSPECT = "suspect"


def _fmt(value: Any) -> str:
    if isinstance(value, (frozenset, set)):
        return " ".join(str(v) for v in sorted(value))
    if isinstance(value, tuple):
        if value and isinstance(value[0], (tuple, frozenset)):
            return " | ".join(_fmt(v) for v in value)
        return " ".join(str(v) for v in value)
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


@dataclass(frozen=True, eq=True)
class Certificate:
    kind: str
    payload: dict = field(compare=False)

    def __str__(self) -> str:
        inner = "; ".join(f"{k}={_fmt(v)}" for k, v in sorted(self.payload.items()))
        return f"{self.kind}[{inner}]"

    def get(self, key: str, default=None):
        return self.payload.get(key, default)


def monotonicity_violation(edge, level: int) -> Certificate:
    return Certificate(MONOTONICITY, {"edge": tuple(sorted(edge)), "level": level})


def downward_closure_violation(superset, subset, level: int) -> Certificate:
    return Certificate(
        DOWNWARD_CLOSURE,
        {"set": tuple(sorted(superset)), "subset": tuple(sorted(subset)), "level": level},
    )


def antichain_violation(contained, container, level: int) -> Certificate:
    return Certificate(
        ANTICHAIN,
        {"contained": tuple(sorted(contained)), "container": tuple(sorted(container)), "level": level},
    )


def helly_violation(subset, h: int, level: int) -> Certificate:
    return Certificate(HELLY, {"subset": tuple(sorted(subset)), "h": h, "level": level})


def colorful_violation(classes, level: int) -> Certificate:
    tup = tuple(tuple(sorted(c)) for c in classes)
    return Certificate(COLORFUL, {"classes": tup, "k": len(tup), "level": level})


def fractional_report(subset, k: int, level: int, alpha: Fraction, beta: Fraction, largest_edge) -> Certificate:
    return Certificate(
        FRACTIONAL_REPORT,
        {
            "subset": tuple(sorted(subset)),
            "k": k,
            "level": level,
            "alpha": alpha,
            "beta": beta,
            "largest_edge": tuple(sorted(largest_edge)),
        },
    )


def suspect(reason: str, detail: Certificate | None = None) -> Certificate:
    payload = {"reason": reason}
    if detail is not None:
        payload["detail"] = str(detail)
    return Certificate(SUSPECT, payload)


def revalidate(chain, cert: Certificate) -> bool:
    """Re-check a certificate against the chain oracle it refers to.

    ``suspect`` certificates never re-validate as violations (that is the
    point of the kind); fractional reports re-validate by recomputation.
    """
    from .hypergraphs import ColorClasses, colorful_selections, k_subsets

    p = cert.payload
    if cert.kind == MONOTONICITY:
        lvl = p["level"]
        return chain.member(p["edge"], lvl) and not chain.member(p["edge"], lvl + 1)
    if cert.kind == DOWNWARD_CLOSURE:
        lvl = p["level"]
        return (
            set(p["subset"]) <= set(p["set"])
            and chain.member(p["set"], lvl)
            and not chain.member(p["subset"], lvl)
        )
    if cert.kind == HELLY:
        lvl, h, s = p["level"], p["h"], p["subset"]
        if len(s) < h:
            return False
        hypothesis = all(chain.member(t, lvl) for t in k_subsets(s, h))
        return hypothesis and not chain.member(s, lvl + 1)
    if cert.kind == COLORFUL:
        lvl = p["level"]
        classes = ColorClasses.of(*p["classes"])
        hypothesis = all(
            chain.member(f, lvl) for f in colorful_selections(classes)
        )
        conclusion = any(chain.member(c, lvl + 1) for c in classes.classes)
        return hypothesis and not conclusion
    if cert.kind == FRACTIONAL_REPORT:
        from .verify import fractional_profile

        prof = fractional_profile(chain, p["k"], p["level"], p["subset"])
        return prof.alpha == p["alpha"] and prof.beta == p["beta"]
    if cert.kind == SUSPECT:
        return False
    raise ValueError(f"unknown certificate kind {cert.kind!r}")
