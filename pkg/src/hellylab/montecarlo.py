"""Hit-or-miss Monte Carlo volume estimation for halfspace bodies.

Uniform samples in the common bounding box, accepted iff they satisfy every
halfspace of every body, give an estimate of the volume of the intersection.
The two-sided interval is Clopper-Pearson (exact binomial), scaled by the
bounding-box volume. Deterministic given (seed, partitions).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._kernels import mc_accept
from .errors import InputError
from .geometry import Box, HalfspaceBody, box_volume, intersect_boxes


@dataclass(frozen=True)
class VolumeEstimate:
    estimate: float
    lower: float
    upper: float
    confidence: float
    samples: int
    seed: int
    hits: int
    partitions: int
    bbox_volume: Fraction
    exact_zero: bool = False

    def __post_init__(self):
        if not (0 <= self.lower <= self.estimate <= self.upper):
            raise InputError("confidence interval must contain the estimate")

    def contains(self, value) -> bool:
        return self.lower <= float(value) <= self.upper


def _binomial_interval(hits: int, n: int, confidence: float) -> tuple[float, float]:
    """Clopper-Pearson two-sided bounds for the acceptance probability."""
    from scipy.stats import beta

    alpha = 1.0 - confidence
    lo = 0.0 if hits == 0 else float(beta.ppf(alpha / 2, hits, n - hits + 1))
    hi = 1.0 if hits == n else float(beta.ppf(1 - alpha / 2, hits + 1, n - hits))
    return lo, hi


def mc_volume(
    bodies: Sequence[HalfspaceBody],
    samples: int,
    confidence: float = 0.95,
    seed: int = 0,
    partitions: int = 1,
) -> VolumeEstimate:
    """Estimate the volume of the intersection of the bodies.

    Sampling is split into ``partitions`` seeded substreams (recorded in the
    output), so the result is reproducible regardless of how partitions are
    scheduled. An empty common bounding box short-circuits to exact zero.
    """
    if not bodies:
        raise InputError("need at least one body")
    if samples < 1:
        raise InputError("need at least one sample")
    if not (0 < confidence < 1):
        raise InputError("confidence must be in (0, 1)")
    if partitions < 1:
        raise InputError("partitions must be >= 1")
    d = bodies[0].dim
    for b in bodies:
        if b.dim != d:
            raise InputError(f"dimension mismatch: {b.dim} vs {d}")
    bbox = intersect_boxes([b.bbox for b in bodies])
    if bbox is None:
        return VolumeEstimate(
            0.0, 0.0, 0.0, confidence, 0, seed, 0, partitions, Fraction(0), True
        )
    bbox_vol = box_volume(bbox)

    constraints = [hs for b in bodies for hs in b.halfspaces]
    normals = np.array(
        [[float(a) for a in hs[0]] for hs in constraints], dtype=np.float64
    )
    offsets = np.array([float(hs[1]) for hs in constraints], dtype=np.float64)
    lo = np.array([float(x) for x in bbox.lo], dtype=np.float64)
    span = np.array([float(b - a) for a, b in zip(bbox.lo, bbox.hi)], dtype=np.float64)

    streams = np.random.SeedSequence(seed).spawn(partitions)
    counts = [samples // partitions] * partitions
    for i in range(samples % partitions):
        counts[i] += 1
    hits = 0
    for stream, count in zip(streams, counts):
        if count == 0:
            continue
        g = np.random.Generator(np.random.PCG64(stream))
        pts = lo + g.random((count, d)) * span
        hits += mc_accept(pts, normals, offsets)

    p_lo, p_hi = _binomial_interval(hits, samples, confidence)
    scale = float(bbox_vol)
    return VolumeEstimate(
        estimate=hits / samples * scale,
        lower=p_lo * scale,
        upper=p_hi * scale,
        confidence=confidence,
        samples=samples,
        seed=seed,
        hits=hits,
        partitions=partitions,
        bbox_volume=bbox_vol,
    )
