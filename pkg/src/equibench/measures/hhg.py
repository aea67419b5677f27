"""Pairwise-distance association statistic (sum of 2x2 chi-squares).

For every ordered pair (i, j) the remaining n-2 points fall into a 2x2
table by the indicators d(x_i, x_k) <= d(x_i, x_j) and
d(y_i, y_k) <= d(y_i, y_j); the Pearson chi-square of that table is summed
over all pairs, skipping tables with a zero margin. The naive computation
is cubic. Here each axis is sorted once globally; for a center i the other
points in order of |x_i - x_k| come from a two-pointer walk outward from
i's sorted position, and a Fenwick tree over y-distance ranks supplies the
joint counts, giving n^2 log n total with no per-center sorting. Distance
ties are exact: every comparison is <=, tied y-distances share the maximal
rank, and a tied block of x-distances is fully inserted before any of its
members is queried.
"""
from __future__ import annotations

import numpy as np
from numba import njit

from ..errors import SizeCapError


@njit(cache=True, nogil=True)
def _walk_by_distance(vals, order, pos_in_order, i, out):
    """Fill `out` with the indices k != i in nondecreasing |vals[i] - vals[k]|."""
    n = vals.shape[0]
    p = pos_in_order[i]
    c = vals[i]
    l = p - 1
    r = p + 1
    t = 0
    while l >= 0 or r < n:
        if l >= 0 and (r >= n or c - vals[order[l]] <= vals[order[r]] - c):
            out[t] = order[l]
            l -= 1
        else:
            out[t] = order[r]
            r += 1
        t += 1


@njit(cache=True, nogil=True)
def _hhg_sum(x: np.ndarray, y: np.ndarray) -> float:
    n = x.shape[0]
    nn = n - 1
    nm2 = nn - 1  # table total per (i, j)
    ox = np.argsort(x, kind="mergesort")
    oy = np.argsort(y, kind="mergesort")
    px = np.empty(n, np.int64)
    py = np.empty(n, np.int64)
    for s in range(n):
        px[ox[s]] = s
        py[oy[s]] = s
    uorder = np.empty(nn, np.int64)
    vorder = np.empty(nn, np.int64)
    vrank = np.empty(n, np.int64)  # indexed by original point id
    fen = np.zeros(nn + 1, np.int64)
    total = 0.0
    for i in range(n):
        _walk_by_distance(x, ox, px, i, uorder)
        _walk_by_distance(y, oy, py, i, vorder)
        # rank of |y_i - y_k| with ties sharing the maximal (count <=) rank
        r = 0
        while r < nn:
            r2 = r
            d = abs(y[i] - y[vorder[r]])
            while r2 + 1 < nn and abs(y[i] - y[vorder[r2 + 1]]) == d:
                r2 += 1
            for s in range(r, r2 + 1):
                vrank[vorder[s]] = r2 + 1
            r = r2 + 1
        for s in range(nn + 1):
            fen[s] = 0
        pos = 0
        while pos < nn:
            pos2 = pos
            d = abs(x[i] - x[uorder[pos]])
            while pos2 + 1 < nn and abs(x[i] - x[uorder[pos2 + 1]]) == d:
                pos2 += 1
            # insert the whole tied-u block before querying any member
            for s in range(pos, pos2 + 1):
                f = vrank[uorder[s]]
                while f <= nn:
                    fen[f] += 1
                    f += f & (-f)
            row1 = pos2  # count of u <= u_j, excluding j itself
            r2m = nm2 - row1
            for s in range(pos, pos2 + 1):
                j = uorder[s]
                cnt = 0
                f = vrank[j]
                while f > 0:
                    cnt += fen[f]
                    f -= f & (-f)
                a11 = cnt - 1
                col1 = vrank[j] - 1
                c2m = nm2 - col1
                if row1 > 0 and r2m > 0 and col1 > 0 and c2m > 0:
                    a12 = row1 - a11
                    a21 = col1 - a11
                    a22 = nm2 - row1 - col1 + a11
                    det = a11 * a22 - a12 * a21
                    total += nm2 * float(det * det) / float(row1 * r2m * col1 * c2m)
            pos = pos2 + 1
    return total


def hhg(x: np.ndarray, y: np.ndarray, size_cap: int = 512) -> float:
    n = len(x)
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    if n > size_cap:
        raise SizeCapError(
            f"n = {n} exceeds the size cap {size_cap}; subsample before scoring"
        )
    return float(_hhg_sum(np.ascontiguousarray(x, float), np.ascontiguousarray(y, float)))
