"""kNN mutual information (neighbor-counting estimator, Chebyshev balls).

The estimate is psi(k) + psi(n) - mean_i[ psi(n_x(i)+1) + psi(n_y(i)+1) ]
in nats, where n_x(i) counts points strictly inside the open interval of
half-width eps_i around x_i and eps_i is the max-norm distance from point i
to its k-th joint-space neighbor. Each axis is replaced by its rank sequence
before any distance is computed, so the estimate depends only on the two
marginal orderings and is exactly invariant under strictly monotone (in
particular affine) per-axis maps of tie-free data.

Tied values get distinct consecutive ranks in original-index order, an
infinitesimal deterministic tie-break: the same input always ranks the same
way, keeping the estimator a pure function of the data.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import digamma


def _rank_order(v: np.ndarray) -> np.ndarray:
    order = np.argsort(v, kind="stable")
    r = np.empty(v.size)
    r[order] = np.arange(v.size, dtype=float)
    return r


def _strict_inside_counts(ranks: np.ndarray, eps: np.ndarray) -> np.ndarray:
    # ranks are a permutation of 0..n-1, so the points with |r_j - r_i| < eps_i
    # (self included) are exactly the integers inside the open interval
    hi = np.minimum(np.ceil(ranks + eps) - 1, len(ranks) - 1)
    lo = np.maximum(np.floor(ranks - eps) + 1, 0)
    return (hi - lo + 1).astype(np.int64)


def _binned_entropy(v: np.ndarray, bins: int) -> float:
    counts, _ = np.histogram(v, bins=bins)
    p = counts[counts > 0] / v.size
    return float(-(p * np.log(p)).sum())


def mutual_information(
    x: np.ndarray, y: np.ndarray, k: int = 6, normalized: bool = False
) -> float:
    n = len(x)
    if n <= k + 1:
        raise ValueError(f"need n > k+1 = {k + 1}, got {n}")
    rx = _rank_order(np.asarray(x, dtype=float))
    ry = _rank_order(np.asarray(y, dtype=float))
    pts = np.column_stack([rx, ry])
    eps = cKDTree(pts).query(pts, k=k + 1, p=np.inf)[0][:, k]
    nx = np.maximum(_strict_inside_counts(rx, eps), 1)
    ny = np.maximum(_strict_inside_counts(ry, eps), 1)
    mi = float(digamma(k) + digamma(n) - np.mean(digamma(nx) + digamma(ny)))
    if not normalized:
        return mi
    bins = math.ceil(math.sqrt(n))
    hx = _binned_entropy(x, bins)
    hy = _binned_entropy(y, bins)
    if hx <= 0.0 or hy <= 0.0:
        return 0.0
    return mi / math.sqrt(hx * hy)
