"""Text formats for explicit chains and convex bodies.

Chain files::

    n <n> levels <lmin> <lmax>
    level <lmin>:
    0 1 2
    3 4

    level <lmin+1>:
    ...

One maximal edge per line as sorted space-separated vertex indices; blank
lines separate level blocks. The parser rejects non-antichain levels and
non-monotone chains with a diagnostic naming the offending edge and levels.
(A level block with no edge lines is the empty hypergraph; the hypergraph
whose only edge is the empty set is not expressible in this format.)

Body files hold one or more bodies separated by blank lines::

    box d <d>      followed by d lines "<lo> <hi>" (rationals p/q)
    polygon        followed by CCW vertex lines "<x> <y>"
    hpoly d <d>    followed by lines "<a_1> ... <a_d> <b>"

Halfspace bodies get their bounding-box certificate from per-coordinate
linear programs, rounded outward to rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .builders import explicit_chain
from .chains import HypergraphChain
from .errors import ChainRejectedError, InputError
from .geometry import Box, ConvexPolygon, HalfspaceBody, polygon
from .hypergraphs import ExplicitHypergraph, GroundSet


def _frac(tok: str, where: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: not a rational number: {tok!r}")


# ---------------------------------------------------------------------------
# chains


def parse_chain(text: str, source: str = "<chain>") -> HypergraphChain:
    lines = text.splitlines()
    idx = 0

    def fail(lineno: int, msg: str):
        raise InputError(f"{source}:{lineno + 1}: {msg}")

    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx >= len(lines):
        fail(0, "empty chain file")
    header = lines[idx].split()
    if len(header) != 5 or header[0] != "n" or header[2] != "levels":
        fail(idx, f"expected 'n <n> levels <lmin> <lmax>', got {lines[idx]!r}")
    try:
        n, lmin, lmax = int(header[1]), int(header[3]), int(header[4])
    except ValueError:
        fail(idx, "header fields must be integers")
    if lmin > lmax:
        fail(idx, f"empty window [{lmin}, {lmax}]")
    idx += 1

    ground = GroundSet(n)
    levels: list[ExplicitHypergraph] = []
    expected = lmin
    while idx < len(lines):
        if not lines[idx].strip():
            idx += 1
            continue
        toks = lines[idx].split()
        if toks[0] != "level" or len(toks) != 2 or not toks[1].endswith(":"):
            fail(idx, f"expected 'level <l>:', got {lines[idx]!r}")
        try:
            lvl = int(toks[1][:-1])
        except ValueError:
            fail(idx, f"bad level number {toks[1][:-1]!r}")
        if lvl != expected:
            fail(idx, f"expected level {expected}, got {lvl}")
        header_line = idx
        idx += 1
        edges = []
        while idx < len(lines) and lines[idx].strip() and lines[idx].split()[0] != "level":
            try:
                verts = [int(t) for t in lines[idx].split()]
            except ValueError:
                fail(idx, f"bad vertex index in {lines[idx]!r}")
            if verts != sorted(verts):
                fail(idx, f"edge must be sorted: {lines[idx]!r}")
            for v in verts:
                if not (0 <= v < n):
                    fail(idx, f"vertex {v} outside ground set of size {n}")
            edges.append(frozenset(verts))
            idx += 1
        try:
            levels.append(ExplicitHypergraph(ground, tuple(edges)))
        except InputError as e:
            fail(header_line, f"level {lvl}: {e}")
        expected += 1
    if expected != lmax + 1:
        raise InputError(
            f"{source}: header promises levels {lmin}..{lmax} but file ends "
            f"after level {expected - 1}"
        )
    try:
        return explicit_chain(levels, lmin=lmin, label=source)
    except ChainRejectedError as e:
        cert = e.certificate
        edge = " ".join(str(v) for v in cert.get("edge"))
        lvl = cert.get("level")
        raise InputError(
            f"{source}: not monotone: maximal edge [{edge}] of level {lvl} "
            f"is not an edge of level {lvl + 1}"
        )


def write_chain(chain: HypergraphChain) -> str:
    if chain.levels is None:
        raise InputError("only explicit chains can be written to a file")
    lmin, lmax = chain.window
    out = [f"n {chain.n} levels {lmin} {lmax}"]
    for i, hg in enumerate(chain.levels):
        out.append(f"level {lmin + i}:")
        for e in hg.maximal_edges:
            out.append(" ".join(str(v) for v in sorted(e)))
        out.append("")
    return "\n".join(out).rstrip("\n") + "\n"


def load_chain(path: str) -> HypergraphChain:
    with open(path, "r", encoding="utf-8") as f:
        return parse_chain(f.read(), source=path)


def save_chain(chain: HypergraphChain, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(write_chain(chain))


# ---------------------------------------------------------------------------
# bodies


def _hpoly_bbox(
    halfspaces: list[tuple[tuple[Fraction, ...], Fraction]], d: int, source: str
) -> Box:
    from scipy.optimize import linprog

    a_ub = [[float(a) for a in hs[0]] for hs in halfspaces]
    b_ub = [float(hs[1]) for hs in halfspaces]
    lo, hi = [], []
    pad = Fraction(1, 64)
    for i in range(d):
        for sign in (1.0, -1.0):
            c = [0.0] * d
            c[i] = sign
            res = linprog(c, A_ub=a_ub, b_ub=b_ub, bounds=[(None, None)] * d)
            if not res.success:
                raise InputError(
                    f"{source}: halfspace body is unbounded or infeasible "
                    f"(coordinate {i})"
                )
            val = Fraction(res.x[i]).limit_denominator(1 << 20)
            if sign > 0:
                lo.append(val - pad)
            else:
                hi.append(val + pad)
    return Box(tuple(lo), tuple(hi))


def parse_bodies(text: str, source: str = "<bodies>"):
    lines = text.splitlines()
    idx = 0
    bodies = []

    def fail(lineno: int, msg: str):
        raise InputError(f"{source}:{lineno + 1}: {msg}")

    while idx < len(lines):
        if not lines[idx].strip():
            idx += 1
            continue
        toks = lines[idx].split()
        start = idx
        if toks[0] == "box":
            if len(toks) != 3 or toks[1] != "d":
                fail(idx, f"expected 'box d <d>', got {lines[idx]!r}")
            d = int(toks[2])
            idx += 1
            lo, hi = [], []
            for axis in range(d):
                if idx >= len(lines) or not lines[idx].strip():
                    fail(start, f"box needs {d} interval lines")
                parts = lines[idx].split()
                if len(parts) != 2:
                    fail(idx, f"expected '<lo> <hi>', got {lines[idx]!r}")
                lo.append(_frac(parts[0], f"{source}:{idx + 1}"))
                hi.append(_frac(parts[1], f"{source}:{idx + 1}"))
                idx += 1
            try:
                bodies.append(Box(tuple(lo), tuple(hi)))
            except InputError as e:
                fail(start, str(e))
        elif toks[0] == "polygon":
            idx += 1
            pts = []
            while idx < len(lines) and lines[idx].strip():
                parts = lines[idx].split()
                if len(parts) != 2:
                    fail(idx, f"expected '<x> <y>', got {lines[idx]!r}")
                pts.append(
                    (
                        _frac(parts[0], f"{source}:{idx + 1}"),
                        _frac(parts[1], f"{source}:{idx + 1}"),
                    )
                )
                idx += 1
            if len(pts) < 1:
                fail(start, "polygon needs at least one vertex line")
            try:
                bodies.append(polygon(*pts))
            except InputError as e:
                fail(start, str(e))
        elif toks[0] == "hpoly":
            if len(toks) != 3 or toks[1] != "d":
                fail(idx, f"expected 'hpoly d <d>', got {lines[idx]!r}")
            d = int(toks[2])
            idx += 1
            hss = []
            while idx < len(lines) and lines[idx].strip():
                parts = lines[idx].split()
                if len(parts) != d + 1:
                    fail(idx, f"expected {d + 1} rationals, got {lines[idx]!r}")
                a = tuple(_frac(t, f"{source}:{idx + 1}") for t in parts[:d])
                b = _frac(parts[d], f"{source}:{idx + 1}")
                hss.append((a, b))
                idx += 1
            if not hss:
                fail(start, "hpoly needs at least one halfspace line")
            bodies.append(HalfspaceBody(d, tuple(hss), _hpoly_bbox(hss, d, source)))
        else:
            fail(idx, f"unknown body kind {toks[0]!r}")
    if not bodies:
        raise InputError(f"{source}: no bodies found")
    return bodies


def write_bodies(bodies: Sequence) -> str:
    blocks = []
    for b in bodies:
        if isinstance(b, Box):
            lines = [f"box d {b.dim}"]
            lines += [f"{lo} {hi}" for lo, hi in zip(b.lo, b.hi)]
        elif isinstance(b, ConvexPolygon):
            lines = ["polygon"]
            lines += [f"{x} {y}" for x, y in b.vertices]
        elif isinstance(b, HalfspaceBody):
            lines = [f"hpoly d {b.dim}"]
            lines += [
                " ".join(str(a) for a in hs[0]) + f" {hs[1]}" for hs in b.halfspaces
            ]
        else:
            raise InputError(f"not a writable body: {b!r}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load_bodies(path: str):
    with open(path, "r", encoding="utf-8") as f:
        return parse_bodies(f.read(), source=path)


def save_bodies(bodies: Sequence, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(write_bodies(bodies))
