"""Distance correlation (biased V-statistic form)."""
from __future__ import annotations

import numpy as np


def _centered_distances(v: np.ndarray) -> np.ndarray:
    d = np.abs(v[:, None] - v[None, :])
    return d - d.mean(axis=0, keepdims=True) - d.mean(axis=1, keepdims=True) + d.mean()


def distance_correlation(x: np.ndarray, y: np.ndarray) -> float:
    """Sample distance correlation from double-centered pairwise distances.

    Uses the plain V-statistic normalization (divide by n^2), so the value
    lies in [0, 1]. A constant input has zero distance variance; 0 is
    returned by convention instead of raising, so scoring loops survive
    degenerate permutations.
    """
    if len(x) < 2:
        raise ValueError("need n >= 2")
    A = _centered_distances(x)
    B = _centered_distances(y)
    dcov2 = float((A * B).mean())
    dvar_x = float((A * A).mean())
    dvar_y = float((B * B).mean())
    denom = dvar_x * dvar_y
    if denom <= 0.0:
        return 0.0
    r2 = dcov2 / np.sqrt(denom)
    return float(np.sqrt(np.clip(r2, 0.0, 1.0)))
