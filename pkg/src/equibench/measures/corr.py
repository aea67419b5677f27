"""Classical correlation coefficients: Pearson, Spearman, Kendall tau-b."""
from __future__ import annotations

import numpy as np
from scipy import stats

from ..errors import DegenerateInputError


def pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Sample product-moment correlation; errors on constant input."""
    if len(x) < 2:
        raise ValueError("need n >= 2")
    xm = x - x.mean()
    ym = y - y.mean()
    denom = np.sqrt(float(xm @ xm) * float(ym @ ym))
    if denom == 0.0:
        raise DegenerateInputError("zero variance input")
    return float(np.clip(float(xm @ ym) / denom, -1.0, 1.0))


def spearman(x: np.ndarray, y: np.ndarray) -> float:
    """Pearson correlation of mid-ranks (ties get average ranks)."""
    if len(x) < 2:
        raise ValueError("need n >= 2")
    return pearson(stats.rankdata(x), stats.rankdata(y))


def kendall(x: np.ndarray, y: np.ndarray) -> float:
    """Tie-corrected tau-b via the O(n log n) pair-counting method."""
    if len(x) < 2:
        raise ValueError("need n >= 2")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise DegenerateInputError("an axis is constant; every pair is tied")
    tau = stats.kendalltau(x, y, variant="b").statistic
    return float(np.clip(tau, -1.0, 1.0))
