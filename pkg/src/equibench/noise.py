"""Noise-controlled data generation.

Two ratio conventions coexist on purpose:

* variance ratio (``msnr``): var(y)/var(eps) with the n-1 divisor. Pair
  construction makes the defining ratio 1 + var(f)/var(eps) identical for
  both models of a pair; the measured var(y)/var(eps) of a finite draw
  still fluctuates around it because of the f-eps cross term.
* power ratio (``ssnr``): sum(y^2)/sum(eps^2). A heuristic search gets a
  noise vector close to a target, then a one-component exact adjustment
  lands on it to machine precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateNoiseError, DegenerateSignalError, NoRealRootError
from .relations import RelationSpec, eval_relation, get_relation


@dataclass(frozen=True)
class NoiseTarget:
    """A target noise level: kind is 'msnr' or 'ssnr'.

    tolerance and max_steps only drive the ssnr search; they are carried
    (with defaults) for msnr targets too so configs stay uniform.
    """

    kind: str
    ratio: float
    tolerance: float = 0.03
    max_steps: int = 100

    def __post_init__(self):
        if self.kind not in ("msnr", "ssnr"):
            raise ValueError(f"kind must be 'msnr' or 'ssnr', got {self.kind!r}")
        if not self.ratio > 0:
            raise ValueError(f"ratio must be > 0, got {self.ratio}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class NoisyModelPair:
    """Two models y_i = f_i(x) + eps_i built to share one noise ratio.

    achieved_ratio_* are the defining ratios 1 + var(f_i)/var(eps_i); agreement
    is algebraic, so they match to float round-off on every draw.
    """

    x: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    scale_a: float
    achieved_ratio_1: float
    achieved_ratio_2: float


def _var(v: np.ndarray) -> float:
    return float(np.var(v, ddof=1))


def msnr(y: np.ndarray, eps: np.ndarray) -> float:
    """Variance ratio var(y)/var(eps), unbiased (n-1) variances."""
    y = np.asarray(y, float)
    eps = np.asarray(eps, float)
    if y.shape != eps.shape or y.ndim != 1 or len(y) < 2:
        raise ValueError("y and eps must be equal-length vectors with n >= 2")
    ve = _var(eps)
    if ve == 0.0:
        raise DegenerateNoiseError("noise has zero variance")
    return _var(y) / ve


def ssnr(y: np.ndarray, eps: np.ndarray) -> float:
    """Power ratio sum(y^2)/sum(eps^2)."""
    y = np.asarray(y, float)
    eps = np.asarray(eps, float)
    if y.shape != eps.shape or y.ndim != 1 or len(y) < 1:
        raise ValueError("y and eps must be equal-length vectors with n >= 1")
    denom = float(eps @ eps)
    if denom == 0.0:
        raise DegenerateNoiseError("noise is identically zero")
    return float(y @ y) / denom


def make_msnr_equal_pair(
    f1: str | RelationSpec,
    f2: str | RelationSpec,
    x: np.ndarray,
    eps: np.ndarray,
) -> NoisyModelPair:
    """Build y1 = f1(x) + eps and y2 = f2(x) + eps/a with a^2 = var(f1)/var(f2).

    The scale a is computed on the realized sample, which makes the two
    defining ratios identical per draw, not just in expectation.
    """
    x = np.asarray(x, float)
    eps = np.asarray(eps, float)
    if x.shape != eps.shape or x.ndim != 1 or len(x) < 3:
        raise ValueError("x and eps must be equal-length vectors with n >= 3")
    g1 = eval_relation(f1, x)
    g2 = eval_relation(f2, x)
    v1, v2 = _var(g1), _var(g2)
    if v2 == 0.0:
        raise DegenerateSignalError(f"var of {get_relation(f2).id} signal is zero")
    if v1 == 0.0:
        raise DegenerateSignalError(f"var of {get_relation(f1).id} signal is zero")
    ve = _var(eps)
    if ve == 0.0:
        raise DegenerateNoiseError("noise has zero variance")
    a = math.sqrt(v1 / v2)
    eps2 = eps / a
    return NoisyModelPair(
        x=x,
        y1=g1 + eps,
        y2=g2 + eps2,
        scale_a=a,
        achieved_ratio_1=1.0 + v1 / ve,
        achieved_ratio_2=1.0 + v2 / _var(eps2),
    )


def scale_noise_to_msnr(signal: np.ndarray, eps: np.ndarray, ratio: float) -> np.ndarray:
    """Scale eps so the defining variance ratio of signal+eps hits `ratio`.

    Only ratios > 1 are reachable: with independent noise the model variance
    is never below the noise variance.
    """
    signal = np.asarray(signal, float)
    eps = np.asarray(eps, float)
    if signal.shape != eps.shape or signal.ndim != 1 or len(signal) < 2:
        raise ValueError("signal and eps must be equal-length vectors with n >= 2")
    if not ratio > 1.0:
        raise ValueError(f"variance-ratio target must be > 1, got {ratio}")
    vs = _var(signal)
    if vs == 0.0:
        raise DegenerateSignalError("signal has zero variance")
    ve = _var(eps)
    if ve == 0.0:
        raise DegenerateNoiseError("noise has zero variance")
    return eps * math.sqrt(vs / ((ratio - 1.0) * ve))


def msnr_to_r2(msnr_value: float, printed_form: bool = False) -> float:
    """Convert a variance ratio to the R^2 of f(x) vs y.

    The default form 1 - 1/msnr follows from var(y) = var(f) + var(eps) for
    independent noise. printed_form=True returns 1/sqrt(1 + 1/msnr) instead,
    an alternative found in some write-ups; it is not consistent with the
    variance-ratio definition and is provided for comparison only.
    """
    if printed_form:
        if not msnr_value > 0:
            raise ValueError(f"ratio must be > 0, got {msnr_value}")
        return 1.0 / math.sqrt(1.0 + 1.0 / msnr_value)
    if not msnr_value > 1.0:
        raise ValueError(f"variance ratio must be > 1 for the consistent form, got {msnr_value}")
    return 1.0 - 1.0 / msnr_value


def heuristic_ssnr_noise(
    signal: np.ndarray,
    target: float,
    max_steps: int = 100,
    tolerance: float = 0.03,
    seed: int = 0,
    trace_out: list | None = None,
) -> tuple[np.ndarray, float]:
    """Random search for noise whose power ratio against `signal` is near target.

    Each step draws a noise mean uniformly on [-an, an] with an^2 = E/n,
    E = sum(signal^2)/target, sets the normal sd so mean^2 + sd^2 = E/n
    (so sum(eps^2) concentrates on E), draws the noise, and keeps the
    best-so-far by |achieved - target|. The achieved ratio uses the
    signal power, sum(signal^2)/sum(eps^2). Stops early inside tolerance.

    trace_out, if given, receives the best |achieved - target| after each step.
    """
    signal = np.asarray(signal, float)
    if signal.ndim != 1 or len(signal) < 1:
        raise ValueError("signal must be a nonempty vector")
    if not target > 0:
        raise ValueError(f"target must be > 0, got {target}")
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    if not tolerance > 0:
        raise ValueError(f"tolerance must be > 0, got {tolerance}")
    sig_power = float(signal @ signal)
    if sig_power == 0.0:
        raise DegenerateSignalError("signal is identically zero")

    n = len(signal)
    crossprod_noise = sig_power / target
    an = math.sqrt(crossprod_noise / n)
    rng = np.random.default_rng(seed)

    best_noise = None
    best_achieved = math.nan
    best_delta = math.inf
    for _ in range(max_steps):
        mean_noise = rng.uniform(-an, an)
        sd_noise = math.sqrt(max(crossprod_noise / n - mean_noise**2, 0.0))
        noise = rng.normal(mean_noise, sd_noise, n)
        achieved = sig_power / float(noise @ noise)
        delta = abs(achieved - target)
        if delta <= best_delta:
            best_noise = noise
            best_achieved = achieved
            best_delta = delta
        if trace_out is not None:
            trace_out.append(best_delta)
        if best_delta <= tolerance:
            break
    return best_noise, best_achieved


def exact_ssnr_adjust(signal: np.ndarray, noise: np.ndarray, target: float) -> np.ndarray:
    """Replace the last noise component so sum(y^2)/sum(eps^2) = target exactly.

    With A = sum_{i<n} (f_i + eps_i)^2 and B = sum_{i<n} eps_i^2, the last
    component solves (target-1) e^2 - 2 f_n e + (target*B - A - f_n^2) = 0;
    the real root of smallest magnitude is taken (minimal perturbation).
    target = 1 collapses to a linear equation.
    """
    signal = np.asarray(signal, float)
    noise = np.asarray(noise, float)
    if signal.shape != noise.shape or signal.ndim != 1 or len(signal) < 2:
        raise ValueError("signal and noise must be equal-length vectors with n >= 2")
    if not target > 0:
        raise ValueError(f"target must be > 0, got {target}")

    f_head, f_n = signal[:-1], float(signal[-1])
    e_head = noise[:-1]
    A = float((f_head + e_head) @ (f_head + e_head))
    B = float(e_head @ e_head)

    qa = target - 1.0
    qb = -2.0 * f_n
    qc = target * B - A - f_n * f_n

    if qa == 0.0:
        if qb == 0.0:
            raise NoRealRootError("degenerate linear equation: zero final signal at target 1")
        root = -qc / qb
    else:
        disc = qb * qb - 4.0 * qa * qc
        if disc < 0.0:
            raise NoRealRootError(
                f"no real final component reaches power ratio {target} for this draw"
            )
        # cancellation-safe quadratic roots
        sq = math.sqrt(disc)
        q = -0.5 * (qb + math.copysign(sq, qb)) if qb != 0.0 else 0.5 * sq
        r1 = q / qa
        r2 = qc / q if q != 0.0 else 0.0
        root = r1 if abs(r1) <= abs(r2) else r2

    out = noise.copy()
    out[-1] = root
    return out


@dataclass(frozen=True)
class NoisyDataset:
    x: np.ndarray
    y: np.ndarray
    eps: np.ndarray
    achieved_ratio: float  # measured on the realized draw (msnr or ssnr by kind)


def noise_for_signal(
    signal: np.ndarray,
    target: NoiseTarget,
    seed: int,
    max_root_retries: int = 10,
) -> tuple[np.ndarray, float]:
    """Noise vector hitting the target against fixed signal values.

    Returns (eps, achieved) with achieved measured on the realized draw:
    var(signal+eps)/var(eps) for msnr, sum((signal+eps)^2)/sum(eps^2) for
    ssnr. The ssnr route runs the heuristic search then the exact
    one-component adjustment, re-drawing on the rare no-real-root failure.
    """
    signal = np.asarray(signal, float)
    rng = np.random.default_rng(seed)

    if target.kind == "msnr":
        eps = scale_noise_to_msnr(signal, rng.standard_normal(len(signal)), target.ratio)
        return eps, msnr(signal + eps, eps)

    for attempt in range(max_root_retries):
        raw, _ = heuristic_ssnr_noise(
            signal,
            target.ratio,
            max_steps=target.max_steps,
            tolerance=target.tolerance,
            seed=int(rng.integers(0, 2**63 - 1)),
        )
        try:
            eps = exact_ssnr_adjust(signal, raw, target.ratio)
        except NoRealRootError:
            continue
        return eps, ssnr(signal + eps, eps)
    raise NoRealRootError(
        f"no real adjustment found in {max_root_retries} redraws at ratio {target.ratio}"
    )


def make_noisy_dataset(
    relation: str | RelationSpec,
    n: int,
    target: NoiseTarget,
    seed: int,
    max_root_retries: int = 10,
) -> NoisyDataset:
    """Draw x ~ U(0,1)^n and y = f(x) + eps at the requested noise target.

    msnr kind scales standard-normal noise to the defining variance ratio and
    reports the measured var(y)/var(eps). ssnr kind reports the measured power
    ratio, equal to the target after the exact adjustment.
    """
    rng = np.random.default_rng(seed)
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    x = rng.random(n)
    f = eval_relation(relation, x)
    eps, achieved = noise_for_signal(
        f, target, int(rng.integers(0, 2**63 - 1)), max_root_retries
    )
    return NoisyDataset(x=x, y=f + eps, eps=eps, achieved_ratio=achieved)
