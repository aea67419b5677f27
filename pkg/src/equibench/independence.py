"""Permutation-based independence testing and power estimation.

The rejection rule is one-sided: a dataset is called dependent when the
observed score exceeds the critical value lambda, the empirical upper
(1-alpha)-quantile of B scores recomputed on randomly re-paired copies of
the same data. Signed measures (pcor, scor, kcor) are therefore tested
against positive association, which is the direction every catalog relation
carries its trend in.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInputError,
    DegenerateNoiseError,
    DegenerateSignalError,
    NoRealRootError,
)
from .measures import score
from .noise import NoiseTarget, make_noisy_dataset
from .relations import RelationSpec, get_relation
from .seeding import derive_seed

_Z95 = 1.959963984540054

# dataset construction can fail on unlucky draws; these are the retryable kinds
_GENERATOR_ERRORS = (
    NoRealRootError,
    DegenerateNoiseError,
    DegenerateSignalError,
    DegenerateInputError,
)


@dataclass(frozen=True)
class PowerEstimate:
    measure: str
    relation: RelationSpec
    noise: NoiseTarget
    n: int
    reps: int
    reps_completed: int
    alpha: float
    power: float
    ci_low: float
    ci_high: float


def permutation_null(
    measure_id: str,
    x: np.ndarray,
    y: np.ndarray,
    B: int,
    seed: int,
    params: dict | None = None,
    measure_seed: int = 0,
) -> np.ndarray:
    """Scores of the measure on (x, sigma_b(y)) for B random re-pairings.

    Deterministic given seed. A permutation on which the measure errors is
    re-drawn (at most 3 retries) so the null always has exactly B entries.
    """
    if B < 20:
        raise ValueError(f"need B >= 20 permutations, got {B}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rng = np.random.default_rng(seed)
    out = np.empty(B)
    for b in range(B):
        last_err = None
        for _ in range(4):
            perm = rng.permutation(y.size)
            try:
                out[b] = score(measure_id, x, y[perm], params, seed=measure_seed).value
                break
            except ValueError as err:
                last_err = err
        else:
            raise ValueError(
                f"measure {measure_id!r} failed on 4 consecutive permutations"
            ) from last_err
    return out


def critical_value(null_scores: np.ndarray, alpha: float) -> float:
    """Upper-tail empirical quantile: the ceil((1-alpha)*B)-th order statistic."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    null_scores = np.asarray(null_scores, dtype=float)
    if null_scores.size == 0:
        raise ValueError("null_scores is empty")
    m = math.ceil((1.0 - alpha) * null_scores.size)
    return float(np.sort(null_scores)[m - 1])


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def estimate_power(
    measure_id: str,
    relation: str | RelationSpec,
    noise: NoiseTarget,
    n: int,
    reps: int,
    alpha: float,
    B: int,
    seed: int,
    params: dict | None = None,
    shared_lambda: bool = False,
) -> PowerEstimate:
    """Monte-Carlo rejection rate of the permutation test on noisy draws.

    Each replicate draws a fresh dataset at the noise target, computes the
    measure, and compares it against lambda from a permutation null on that
    same dataset (shared_lambda=True instead reuses the first replicate's
    lambda everywhere, a sensitivity mode). Replicates whose dataset
    construction keeps failing after 5 fresh-seed retries are counted as
    missing; the power denominator is the completed count.
    """
    if reps < 30:
        raise ValueError(f"need reps >= 30, got {reps}")
    rel = get_relation(relation) if isinstance(relation, str) else relation
    rejections = 0
    completed = 0
    lam_shared = None
    for r in range(reps):
        ds = None
        for attempt in range(6):
            try:
                ds = make_noisy_dataset(rel, n, noise, derive_seed(seed, "gen", r, attempt))
                break
            except _GENERATOR_ERRORS:
                continue
        if ds is None:
            continue
        obs = score(measure_id, ds.x, ds.y, params, seed=derive_seed(seed, "ms", r)).value
        if shared_lambda and lam_shared is not None:
            lam = lam_shared
        else:
            null = permutation_null(
                measure_id,
                ds.x,
                ds.y,
                B,
                derive_seed(seed, "null", r),
                params,
                measure_seed=derive_seed(seed, "ms", r),
            )
            lam = critical_value(null, alpha)
            if shared_lambda:
                lam_shared = lam
        completed += 1
        if obs > lam:
            rejections += 1
    if completed == 0:
        raise RuntimeError(
            f"all {reps} replicates failed dataset construction for "
            f"{measure_id}/{rel.id} at {noise}"
        )
    power = rejections / completed
    ci_low, ci_high = wilson_interval(rejections, completed)
    return PowerEstimate(
        measure=measure_id,
        relation=rel,
        noise=noise,
        n=n,
        reps=reps,
        reps_completed=completed,
        alpha=alpha,
        power=power,
        ci_low=min(ci_low, power),
        ci_high=max(ci_high, power),
    )
