"""Maximal information coefficient.

Grid search over shapes (columns x rows) with cols*rows <= n^alpha: one axis
is equipartitioned into rows (ties kept together), the other is optimized by
dynamic programming over clump boundaries, where a clump is a maximal run of
x-consecutive points sharing one row (cuts inside a clump are never optimal,
so restricting candidate cuts to clump boundaries loses nothing). When there
are more clumps than clumps_factor * max_cols they are first merged into
near-equal-count superclumps to bound the DP size. Both orientations are
searched, which makes the score symmetric in (x, y). Scores are normalized
by log min(cols, rows), so the result lies in [0, 1].
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _column_dp(cum: np.ndarray, n: float, lmax: int) -> np.ndarray:
    """Best sum of per-column terms for exactly l columns, l = 0..lmax.

    cum is the (m+1, q) cumulative row-count matrix over clump prefixes.
    The per-column term for clumps (s, t] is
    sum_r (a_r/n) ln(a_r/n) - (tot/n) ln(tot/n); adding the fixed row entropy
    to a column sum gives the grid's mutual information in nats.
    """
    m = cum.shape[0] - 1
    q = cum.shape[1]
    g = np.empty((m + 1, m + 1))
    for s in range(m):
        for t in range(s + 1, m + 1):
            acc = 0.0
            tot = 0.0
            for r in range(q):
                a = cum[t, r] - cum[s, r]
                if a > 0.0:
                    acc += (a / n) * np.log(a / n)
                    tot += a
            if tot > 0.0:
                acc -= (tot / n) * np.log(tot / n)
            g[s, t] = acc
    F = np.full((lmax + 1, m + 1), -np.inf)
    for t in range(1, m + 1):
        F[1, t] = g[0, t]
    for l in range(2, lmax + 1):
        for t in range(l, m + 1):
            best = -np.inf
            for s in range(l - 1, t):
                v = F[l - 1, s] + g[s, t]
                if v > best:
                    best = v
            F[l, t] = best
    return F[:, m]


def _equipartition(vals: np.ndarray, q: int) -> np.ndarray:
    """Row index per sample: near-equal counts, tied values kept together."""
    n = len(vals)
    order = np.argsort(vals, kind="stable")
    sv = vals[order]
    bounds = np.round(np.arange(1, q + 1) * n / q).astype(np.int64)
    rows_sorted = np.empty(n, dtype=np.int64)
    if n == 0 or np.all(sv[1:] > sv[:-1]):
        rows_sorted = np.searchsorted(bounds, np.arange(n), side="right")
    else:
        row = 0
        i = 0
        while i < n:
            j = i + 1
            while j < n and sv[j] == sv[i]:
                j += 1
            while row < q - 1 and i >= bounds[row]:
                row += 1
            rows_sorted[i:j] = row
            i = j
    rows = np.empty(n, dtype=np.int64)
    rows[order] = rows_sorted
    return rows


def _clump_cumulative(x: np.ndarray, rows: np.ndarray, q: int, cap: int) -> np.ndarray:
    """Cumulative (m+1, q) row-count matrix over x-ordered (super)clumps."""
    n = len(x)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    rs = rows[order]
    strict = np.empty(n, dtype=bool)
    strict[0] = True
    strict[1:] = xs[1:] > xs[:-1]
    if strict.all():
        b = np.empty(n, dtype=bool)
        b[0] = True
        b[1:] = rs[1:] != rs[:-1]
        cid = np.cumsum(b) - 1
    else:
        # x ties are inseparable: tie groups form atomic units, and only
        # single-row units merge with same-row neighbors
        cid = np.empty(n, dtype=np.int64)
        c = -1
        prev_pure_row = -1
        i = 0
        while i < n:
            j = i + 1
            while j < n and not strict[j]:
                j += 1
            urows = rs[i:j]
            pure = bool(np.all(urows == urows[0]))
            if not (pure and prev_pure_row == urows[0]):
                c += 1
            cid[i:j] = c
            prev_pure_row = urows[0] if pure else -1
            i = j
    m = int(cid[-1]) + 1
    counts = np.zeros((m, q))
    np.add.at(counts, (cid, rs), 1.0)
    if m > cap:
        sizes = counts.sum(axis=1)
        starts = np.concatenate([[0.0], np.cumsum(sizes)[:-1]])
        gbounds = np.round(np.arange(1, cap + 1) * n / cap)
        gid = np.minimum(np.searchsorted(gbounds, starts, side="right"), cap - 1)
        m2 = int(gid[-1]) + 1
        merged = np.zeros((m2, q))
        for r in range(q):
            merged[:, r] = np.bincount(gid, weights=counts[:, r], minlength=m2)
        counts = merged
        m = m2
    cum = np.zeros((m + 1, q))
    np.cumsum(counts, axis=0, out=cum[1:])
    return cum


def _oriented_best(xv: np.ndarray, yv: np.ndarray, budget: float, c: int) -> float:
    n = len(xv)
    best = 0.0
    for q in range(2, int(budget / 2) + 1):
        rows = _equipartition(yv, q)
        pr = np.bincount(rows, minlength=q) / n
        pr = pr[pr > 0]
        hq = float(-(pr * np.log(pr)).sum())
        lbudget = int(budget / q)
        cum = _clump_cumulative(xv, rows, q, cap=c * lbudget)
        lmax = min(lbudget, cum.shape[0] - 1)
        if lmax < 2:
            continue
        F = _column_dp(cum, float(n), lmax)
        for l in range(2, lmax + 1):
            v = (F[l] + hq) / math.log(min(l, q))
            if v > best:
                best = v
    return best


def mic(x: np.ndarray, y: np.ndarray, alpha_exponent: float = 0.6, clumps_factor: int = 15) -> float:
    n = len(x)
    if n < 8:
        raise ValueError(f"need n >= 8, got {n}")
    budget = max(float(n) ** alpha_exponent, 4.0)  # always admit the 2x2 grid
    best = max(
        _oriented_best(x, y, budget, clumps_factor),
        _oriented_best(y, x, budget, clumps_factor),
    )
    return float(min(best, 1.0))
