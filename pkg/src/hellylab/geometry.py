"""Exact-arithmetic convex bodies and their intersection volumes.

Boxes (any dimension) and convex polygons (plane) support exact rational
intersection and volume; halfspace bodies are the substrate for Monte Carlo
estimation. Every coordinate is a ``fractions.Fraction``; no floating point
enters any membership or volume decision on the exact paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError

Point = tuple[Fraction, Fraction]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# boxes


@dataclass(frozen=True)
class Box:
    """Axis-aligned product of closed intervals; zero-width axes allowed."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise InputError("lo/hi dimension mismatch")
        for a, b in zip(self.lo, self.hi):
            if a > b:
                raise InputError(f"box interval [{a}, {b}] is inverted")

    @property
    def dim(self) -> int:
        return len(self.lo)


def box(*intervals: tuple) -> Box:
    los = tuple(_frac(iv[0]) for iv in intervals)
    his = tuple(_frac(iv[1]) for iv in intervals)
    return Box(los, his)


def intersect_boxes(bodies: Sequence[Box]) -> Box | None:
    """Per-axis interval intersection; None if empty on some axis."""
    if not bodies:
        raise InputError("need at least one box")
    d = bodies[0].dim
    for b in bodies:
        if b.dim != d:
            raise InputError(f"dimension mismatch: {b.dim} vs {d}")
    lo = [max(b.lo[i] for b in bodies) for i in range(d)]
    hi = [min(b.hi[i] for b in bodies) for i in range(d)]
    if any(a > b for a, b in zip(lo, hi)):
        return None
    return Box(tuple(lo), tuple(hi))


def box_volume(b: Box | None) -> Fraction:
    if b is None:
        return Fraction(0)
    vol = Fraction(1)
    for a, c in zip(b.lo, b.hi):
        vol *= c - a
    return vol


# ---------------------------------------------------------------------------
# convex polygons (possibly degenerate: point / segment / empty)


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex CCW polygon, or a degenerate body of area zero.

    0 vertices = empty, 1 = point, 2 = segment, >= 3 = proper polygon with
    every consecutive cross product > 0 (no three collinear).
    """

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = self.vertices
        if len(vs) == 2 and vs[0] == vs[1]:
            raise InputError("degenerate segment with equal endpoints")
        if len(vs) >= 3:
            m = len(vs)
            for i in range(m):
                if _cross(vs[i], vs[(i + 1) % m], vs[(i + 2) % m]) <= 0:
                    raise InputError(
                        "vertices are not strictly convex counterclockwise"
                    )

    @property
    def kind(self) -> str:
        return ("empty", "point", "segment")[len(self.vertices)] if len(
            self.vertices
        ) < 3 else "polygon"

    def is_empty(self) -> bool:
        return not self.vertices


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict hull (collinear boundary points dropped), CCW from the
    lexicographically smallest vertex; 0/1/2 points for degenerate input."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2:
        return sorted(hull)
    return hull


def polygon(*points: tuple) -> ConvexPolygon:
    """Build a polygon from raw points (any order); hull + canonical start."""
    pts = [(_frac(x), _frac(y)) for x, y in points]
    return ConvexPolygon(tuple(convex_hull(pts)))


def polygon_area(p: ConvexPolygon) -> Fraction:
    """Shoelace sum over the vertex cycle, divided by two; degenerate -> 0."""
    vs = p.vertices
    if len(vs) < 3:
        return Fraction(0)
    s = Fraction(0)
    for i in range(len(vs)):
        x0, y0 = vs[i]
        x1, y1 = vs[(i + 1) % len(vs)]
        s += x0 * y1 - x1 * y0
    return s / 2


def halfplanes_of(p: ConvexPolygon) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Closed halfplanes a*x + b*y <= c whose intersection is the body."""
    vs = p.vertices
    if len(vs) == 0:
        one = Fraction(1)
        return [(Fraction(0), Fraction(0), -one)]
    if len(vs) == 1:
        (x, y) = vs[0]
        one = Fraction(1)
        return [(one, Fraction(0), x), (-one, Fraction(0), -x),
                (Fraction(0), one, y), (Fraction(0), -one, -y)]
    if len(vs) == 2:
        (px, py), (qx, qy) = vs
        a, b = qy - py, px - qx
        dx, dy = qx - px, qy - py
        return [
            (a, b, a * px + b * py),
            (-a, -b, -(a * px + b * py)),
            (-dx, -dy, -(dx * px + dy * py)),
            (dx, dy, dx * qx + dy * qy),
        ]
    out = []
    for i in range(len(vs)):
        (px, py), (qx, qy) = vs[i], vs[(i + 1) % len(vs)]
        a, b = qy - py, px - qx
        out.append((a, b, a * px + b * py))
    return out


def _clip(points: list[Point], hp: tuple[Fraction, Fraction, Fraction]) -> list[Point]:
    """Sutherland-Hodgman against one closed halfplane (boundary kept)."""
    a, b, c = hp
    if not points:
        return []

    def side(p: Point) -> Fraction:
        return a * p[0] + b * p[1] - c

    if len(points) == 1:
        return points if side(points[0]) <= 0 else []
    out: list[Point] = []
    prev = points[-1]
    sprev = side(prev)
    for cur in points:
        scur = side(cur)
        if scur <= 0:
            if sprev > 0:
                t = sprev / (sprev - scur)
                out.append(
                    (prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1]))
                )
            out.append(cur)
        elif sprev <= 0:
            t = sprev / (sprev - scur)
            out.append(
                (prev[0] + t * (cur[0] - prev[0]), prev[1] + t * (cur[1] - prev[1]))
            )
        prev, sprev = cur, scur
    return out


def intersect_polygons(bodies: Sequence[ConvexPolygon]) -> ConvexPolygon:
    """Iterated halfplane clipping, exact; result may be degenerate."""
    if not bodies:
        raise InputError("need at least one polygon")
    pts = list(bodies[0].vertices)
    for other in bodies[1:]:
        if other.is_empty():
            return ConvexPolygon(())
        for hp in halfplanes_of(other):
            pts = _clip(pts, hp)
            if not pts:
                return ConvexPolygon(())
    return ConvexPolygon(tuple(convex_hull(pts)))


def box_to_polygon(b: Box) -> ConvexPolygon:
    if b.dim != 2:
        raise InputError("only 2-d boxes convert to polygons")
    (x0, y0), (x1, y1) = b.lo, b.hi
    return polygon((x0, y0), (x1, y0), (x1, y1), (x0, y1))


# ---------------------------------------------------------------------------
# halfspace bodies (Monte Carlo substrate)


@dataclass(frozen=True)
class HalfspaceBody:
    """Intersection of closed halfspaces a.x <= b with a bounding box."""

    dim: int
    halfspaces: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    bbox: Box

    def __post_init__(self):
        if self.bbox.dim != self.dim:
            raise InputError("bounding box dimension mismatch")
        for a, _b in self.halfspaces:
            if len(a) != self.dim:
                raise InputError("halfspace normal dimension mismatch")

    def contains_point(self, x: Sequence[Fraction]) -> bool:
        return all(
            sum(ai * xi for ai, xi in zip(a, x)) <= b for a, b in self.halfspaces
        )


def halfspaces_of_box(b: Box) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    out = []
    d = b.dim
    for i in range(d):
        e = tuple(Fraction(1 if j == i else 0) for j in range(d))
        ne = tuple(-x for x in e)
        out.append((e, b.hi[i]))
        out.append((ne, -b.lo[i]))
    return out


def box_as_halfspace_body(b: Box) -> HalfspaceBody:
    return HalfspaceBody(b.dim, tuple(halfspaces_of_box(b)), b)


def polygon_as_halfspace_body(p: ConvexPolygon) -> HalfspaceBody:
    if p.is_empty():
        raise InputError("cannot convert the empty polygon")
    xs = [v[0] for v in p.vertices]
    ys = [v[1] for v in p.vertices]
    bbox = Box((min(xs), min(ys)), (max(xs), max(ys)))
    hs = tuple(((a, b), c) for a, b, c in halfplanes_of(p))
    return HalfspaceBody(2, hs, bbox)


# ---------------------------------------------------------------------------
# memoized subset intersections (volume oracle for chains)


class ExactIntersections:
    """Intersection volumes for every subfamily of boxes or polygons.

    Subsets are bitmasks; intersections are built up one body at a time and
    memoized, so materializing a chain level costs one clip per subset.
    """

    def __init__(self, bodies: Sequence[Box] | Sequence[ConvexPolygon]):
        if not bodies:
            raise InputError("need at least one body")
        if all(isinstance(b, Box) for b in bodies):
            self.mode = "box"
            d = bodies[0].dim
            for b in bodies:
                if b.dim != d:
                    raise InputError("dimension mismatch")
        elif all(isinstance(b, ConvexPolygon) for b in bodies):
            self.mode = "polygon"
        else:
            raise InputError("bodies must be all boxes or all polygons")
        self.bodies = list(bodies)
        self._cache: dict[int, object] = {}

    def body(self, mask: int):
        """Intersection of the masked bodies; mask 0 is not defined here."""
        if mask == 0:
            raise InputError("empty subfamily has no intersection body")
        if mask in self._cache:
            return self._cache[mask]
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        if rest == 0:
            result = self.bodies[i]
        else:
            prev = self.body(rest)
            if prev is None:
                result = None
            elif self.mode == "box":
                result = intersect_boxes([prev, self.bodies[i]])
            else:
                result = intersect_polygons([prev, self.bodies[i]])
                if result.is_empty():
                    result = None
        self._cache[mask] = result
        return result

    def nonempty(self, mask: int) -> bool:
        return mask == 0 or self.body(mask) is not None

    def volume(self, mask: int) -> Fraction:
        if mask == 0:
            raise InputError("empty subfamily has no volume")
        b = self.body(mask)
        if b is None:
            return Fraction(0)
        return box_volume(b) if self.mode == "box" else polygon_area(b)


# ---------------------------------------------------------------------------
# seeded instance generators


def random_boxes(
    count: int,
    dim: int,
    scale: int = 4,
    denominator: int = 8,
    seed: int = 0,
    min_width: Fraction | None = None,
) -> list[Box]:
    """Reproducible boxes with rational corners on a 1/denominator grid."""
    if count < 1 or dim < 1:
        raise InputError("count and dimension must be positive")
    rng = random.Random(seed)
    q = denominator
    out = []
    lo_min = -scale * q
    for _ in range(count):
        los, his = [], []
        for _ in range(dim):
            a = Fraction(rng.randint(lo_min, scale * q), q)
            w = Fraction(rng.randint(0, 2 * scale * q), q)
            if min_width is not None and w < min_width:
                w = min_width
            los.append(a)
            his.append(a + w)
        out.append(Box(tuple(los), tuple(his)))
    return out


def random_polygons(
    count: int,
    vertex_budget: int,
    scale: int = 4,
    denominator: int = 8,
    seed: int = 0,
) -> list[ConvexPolygon]:
    """Hulls of random rational points; degenerate hulls are re-drawn."""
    if count < 1:
        raise InputError("count must be positive")
    if vertex_budget < 3:
        raise InputError("vertex budget must be at least 3")
    rng = random.Random(seed)
    q = denominator
    out = []
    while len(out) < count:
        pts = [
            (
                Fraction(rng.randint(-scale * q, scale * q), q),
                Fraction(rng.randint(-scale * q, scale * q), q),
            )
            for _ in range(vertex_budget)
        ]
        hull = convex_hull(pts)
        if len(hull) >= 3:
            out.append(ConvexPolygon(tuple(hull)))
    return out
