"""Numpy / plain-Python kernel implementations.

Reference semantics for the numba kernels; outputs must match bit for bit.
The Monte Carlo acceptance accumulates dot products coordinate by coordinate
in the same order as the scalar loop, so float results are identical.
"""

from __future__ import annotations

import numpy as np


def edge_bitmap(max_masks: np.ndarray, n: int) -> np.ndarray:
    """bitmap[m] = True iff mask m is contained in some maximal-edge mask."""
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    if len(max_masks) == 0:
        return np.zeros(size, dtype=np.bool_)
    mm = np.asarray(max_masks, dtype=np.int64)
    return ((masks[:, None] & ~mm[None, :]) == 0).any(axis=1)


def clique_bitmap(edge_bm: np.ndarray, n: int, h: int) -> np.ndarray:
    """bitmap[m] = True iff every size-h subset of mask m is an edge.

    Masks of size < h count vacuously. Computed layer by layer over popcount:
    a set of size > h is an h-clique iff all its one-smaller subsets are.
    """
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    pc = np.bitwise_count(masks).astype(np.int64)
    out = np.zeros(size, dtype=np.bool_)
    out[pc < h] = True
    sel = pc == h
    out[sel] = edge_bm[sel]
    for layer in range(h + 1, n + 1):
        idx = masks[pc == layer]
        ok = np.ones(len(idx), dtype=np.bool_)
        for b in range(n):
            has = (idx >> b) & 1 == 1
            ok[has] &= out[idx[has] ^ (1 << b)]
        out[idx] = ok
    return out


def colorful_scan(
    edge_lo: np.ndarray,
    edge_hi: np.ndarray,
    n: int,
    k: int,
    max_class_size: int,
    budget: int,
) -> tuple[int, int, int]:
    """Scan unordered tuples of k disjoint nonempty color classes.

    Assignments are encoded base (k+1): digit of vertex v is 0 (unused) or
    1 + class index. Only canonical assignments count (class labels appear in
    first-use order over vertices 0..n-1), so each unordered tuple is seen
    once. For each tuple: if every choice of one vertex per class is an edge
    in ``edge_lo`` but no whole class is an edge in ``edge_hi``, that tuple is
    a violation.

    Returns (status, assignment, checked): status 0 = all ok, 1 = violation
    (``assignment`` is its code), 2 = budget exhausted after ``checked``
    tuples. ``budget <= 0`` means unbounded.
    """
    base = k + 1
    total = base**n
    checked = 0
    for a in range(total):
        x = a
        members: list[list[int]] = [[] for _ in range(k)]
        next_label = 0
        canonical = True
        for v in range(n):
            d = x % base
            x //= base
            if d > 0:
                j = d - 1
                if j > next_label:
                    canonical = False
                    break
                if j == next_label:
                    next_label += 1
                members[j].append(v)
        if not canonical or next_label != k:
            continue
        if max_class_size > 0 and any(len(m) > max_class_size for m in members):
            continue
        checked += 1
        if budget > 0 and checked > budget:
            return (2, -1, checked - 1)
        hypothesis = True
        idx = [0] * k
        while hypothesis:
            m = 0
            for j in range(k):
                m |= 1 << members[j][idx[j]]
            if not edge_lo[m]:
                hypothesis = False
                break
            j = k - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < len(members[j]):
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                break
        if not hypothesis:
            continue
        conclusion = False
        for j in range(k):
            cm = 0
            for v in members[j]:
                cm |= 1 << v
            if edge_hi[cm]:
                conclusion = True
                break
        if not conclusion:
            return (1, a, checked)
    return (0, -1, checked)


def mc_accept(points: np.ndarray, normals: np.ndarray, offsets: np.ndarray) -> int:
    """Count sample points satisfying every constraint normal . x <= offset."""
    s = points.shape[0]
    d = points.shape[1]
    ok = np.ones(s, dtype=np.bool_)
    for j in range(normals.shape[0]):
        acc = np.zeros(s, dtype=np.float64)
        for t in range(d):
            acc += normals[j, t] * points[:, t]
        ok &= acc <= offsets[j]
    return int(ok.sum())
