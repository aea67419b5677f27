"""Hilbert-Schmidt independence criterion with Gaussian kernels."""
from __future__ import annotations

import numpy as np

from ..errors import DegenerateInputError


def _gaussian_gram(v: np.ndarray) -> np.ndarray:
    d = np.abs(v[:, None] - v[None, :])
    iu = np.triu_indices(len(v), k=1)
    off = d[iu]
    nz = off[off > 0]
    if nz.size == 0:
        raise DegenerateInputError("all pairwise distances are zero on an axis")
    sigma = float(np.median(nz))  # median heuristic over nonzero distances
    return np.exp(-(d * d) / (2.0 * sigma * sigma))


def hsic(x: np.ndarray, y: np.ndarray) -> float:
    """Biased V-statistic HSIC, trace(K H L H) / n^2, kernels bandwidthed
    by the per-axis median of nonzero pairwise distances."""
    n = len(x)
    if n < 4:
        raise ValueError("need n >= 4")
    K = _gaussian_gram(x)
    L = _gaussian_gram(y)
    Kc = K - K.mean(axis=0, keepdims=True) - K.mean(axis=1, keepdims=True) + K.mean()
    return float(max((Kc * L).mean(), 0.0))
