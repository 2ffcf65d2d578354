"""Numba ``@njit`` kernel implementations. Same contracts as ``numpy_impl``."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(m: np.int64) -> np.int64:
    c = 0
    while m:
        m &= m - 1
        c += 1
    return c


@njit(cache=True)
def edge_bitmap(max_masks: np.ndarray, n: int) -> np.ndarray:
    size = 1 << n
    out = np.zeros(size, dtype=np.bool_)
    for m in range(size):
        for e in max_masks:
            if m & ~e == 0:
                out[m] = True
                break
    return out


@njit(cache=True)
def clique_bitmap(edge_bm: np.ndarray, n: int, h: int) -> np.ndarray:
    size = 1 << n
    out = np.zeros(size, dtype=np.bool_)
    for m in range(size):
        pc = _popcount(m)
        if pc < h:
            out[m] = True
        elif pc == h:
            out[m] = edge_bm[m]
        else:
            ok = True
            mm = m
            while mm:
                b = mm & -mm
                if not out[m ^ b]:
                    ok = False
                    break
                mm ^= b
            out[m] = ok
    return out


@njit(cache=True)
def colorful_scan(
    edge_lo: np.ndarray,
    edge_hi: np.ndarray,
    n: int,
    k: int,
    max_class_size: int,
    budget: int,
):
    base = k + 1
    total = 1
    for _ in range(n):
        total *= base
    members = np.empty((k, n), dtype=np.int64)
    counts = np.empty(k, dtype=np.int64)
    idx = np.empty(k, dtype=np.int64)
    checked = 0
    for a in range(total):
        x = a
        for j in range(k):
            counts[j] = 0
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
                members[j, counts[j]] = v
                counts[j] += 1
        if not canonical or next_label != k:
            continue
        if max_class_size > 0:
            too_big = False
            for j in range(k):
                if counts[j] > max_class_size:
                    too_big = True
                    break
            if too_big:
                continue
        checked += 1
        if budget > 0 and checked > budget:
            return (2, np.int64(-1), checked - 1)
        hypothesis = True
        for j in range(k):
            idx[j] = 0
        while hypothesis:
            m = 0
            for j in range(k):
                m |= 1 << members[j, idx[j]]
            if not edge_lo[m]:
                hypothesis = False
                break
            j = k - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < counts[j]:
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
            for t in range(counts[j]):
                cm |= 1 << members[j, t]
            if edge_hi[cm]:
                conclusion = True
                break
        if not conclusion:
            return (1, np.int64(a), checked)
    return (0, np.int64(-1), checked)


@njit(cache=True)
def mc_accept(points: np.ndarray, normals: np.ndarray, offsets: np.ndarray) -> int:
    s = points.shape[0]
    d = points.shape[1]
    c = normals.shape[0]
    count = 0
    for i in range(s):
        ok = True
        for j in range(c):
            acc = 0.0
            for t in range(d):
                acc += normals[j, t] * points[i, t]
            if acc > offsets[j]:
                ok = False
                break
        if ok:
            count += 1
    return count
