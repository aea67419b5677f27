"""Catalog of the 21 benchmark relationships.

Every relation is a total, deterministic function on [0, 1]. The piecewise
ones are written in indicator-sum form so the branch boundaries are explicit
(boundary points go to the branch whose inequality includes them).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class RelationSpec:
    id: str
    display_name: str
    formula: str
    fn: Callable[[np.ndarray], np.ndarray]


def _line(x):
    return x.copy()


def _linear_periodic_low(x):
    return 0.2 * np.sin(4 * (2 * x - 1)) + 1.1 * (2 * x - 1)


def _linear_periodic_medium(x):
    return np.sin(10 * np.pi * x) + x


def _linear_periodic_high1(x):
    return 0.1 * np.sin(10.6 * (2 * x - 1)) + 1.1 * (2 * x - 1)


def _linear_periodic_high2(x):
    return 0.2 * np.sin(10.6 * (2 * x - 1)) + 1.1 * (2 * x - 1)


def _non_fourier_cosine_low(x):
    return np.cos(7 * np.pi * x)


def _cosine_high(x):
    return np.cos(14 * np.pi * x)


def _cubic(x):
    return 4 * x**3 + x**2 - 4 * x


def _cubic_y_stretched(x):
    return 41 * (4 * x**3 + x**2 - 4 * x)


def _l_shaped(x):
    return (x / 99) * (x <= 99 / 100) + 1.0 * (x > 99 / 100)


def _exp_2x(x):
    return 2.0**x


def _exp_10x(x):
    return 10.0**x


def _parabola(x):
    return 4 * x**2


def _non_fourier_sine_low(x):
    return np.sin(9 * np.pi * x)


def _sine_low(x):
    return np.sin(8 * np.pi * x)


def _sine_high(x):
    return np.sin(16 * np.pi * x)


def _sigmoid(x):
    return (50 * (x - 0.5) + 0.5) * ((1 / 20 <= x) & (x <= 51 / 100)) + 1.0 * (x > 51 / 100)


def _varying_freq_cosine(x):
    return np.sin(5 * np.pi * x * (1 + x))


def _varying_freq_sine(x):
    return np.sin(6 * np.pi * x * (1 + x))


def _spike(x):
    return (
        20.0 * (x < 1 / 20)
        + (-18 * x + 19 / 10) * ((1 / 20 <= x) & (x < 1 / 10))
        + (-x / 9 + 1 / 9) * (x >= 1 / 10)
    )


def _lopsided_l_shaped(x):
    return (
        200 * x * (x < 1 / 200)
        + (-198 * x + 199 / 100) * ((1 / 200 <= x) & (x < 1 / 100))
        + (-x / 99 + 1 / 99) * (x >= 1 / 100)
    )


_CATALOG: tuple[RelationSpec, ...] = (
    RelationSpec("line", "Line", "y = x", _line),
    RelationSpec(
        "linear_periodic_low",
        "Linear+Periodic, Low Freq",
        "y = 0.2 sin(4(2x-1)) + 1.1(2x-1)",
        _linear_periodic_low,
    ),
    RelationSpec(
        "linear_periodic_medium",
        "Linear+Periodic, Medium Freq",
        "y = sin(10 pi x) + x",
        _linear_periodic_medium,
    ),
    RelationSpec(
        "linear_periodic_high1",
        "Linear+Periodic, High Freq",
        "y = 0.1 sin(10.6(2x-1)) + 1.1(2x-1)",
        _linear_periodic_high1,
    ),
    RelationSpec(
        "linear_periodic_high2",
        "Linear+Periodic, High Freq",
        "y = 0.2 sin(10.6(2x-1)) + 1.1(2x-1)",
        _linear_periodic_high2,
    ),
    RelationSpec(
        "non_fourier_cosine_low",
        "Non-Fourier Freq [Low] Cosine",
        "y = cos(7 pi x)",
        _non_fourier_cosine_low,
    ),
    RelationSpec("cosine_high", "Cosine, High Freq", "y = cos(14 pi x)", _cosine_high),
    RelationSpec("cubic", "Cubic", "y = 4x^3 + x^2 - 4x", _cubic),
    RelationSpec(
        "cubic_y_stretched",
        "Cubic, Y-stretched",
        "y = 41(4x^3 + x^2 - 4x)",
        _cubic_y_stretched,
    ),
    RelationSpec(
        "l_shaped",
        "L-shaped",
        "y = (x/99) I(x <= 99/100) + I(x > 99/100)",
        _l_shaped,
    ),
    RelationSpec("exp_2x", "Exponential [2^x]", "y = 2^x", _exp_2x),
    RelationSpec("exp_10x", "Exponential [10^x]", "y = 10^x", _exp_10x),
    RelationSpec("parabola", "Parabola", "y = 4x^2", _parabola),
    RelationSpec(
        "non_fourier_sine_low",
        "Non-Fourier Freq [Low] Sine",
        "y = sin(9 pi x)",
        _non_fourier_sine_low,
    ),
    RelationSpec("sine_low", "Sine, Low Freq", "y = sin(8 pi x)", _sine_low),
    RelationSpec("sine_high", "Sine, High Freq", "y = sin(16 pi x)", _sine_high),
    RelationSpec(
        "sigmoid",
        "Sigmoid",
        "y = (50(x-0.5)+0.5) I(1/20 <= x <= 51/100) + I(x > 51/100)",
        _sigmoid,
    ),
    RelationSpec(
        "varying_freq_cosine",
        "Varying Freq [Medium] Cosine",
        "y = sin(5 pi x(1+x))",
        _varying_freq_cosine,
    ),
    RelationSpec(
        "varying_freq_sine",
        "Varying Freq [Medium] Sine",
        "y = sin(6 pi x(1+x))",
        _varying_freq_sine,
    ),
    RelationSpec(
        "spike",
        "Spike",
        "y = 20 I(x < 1/20) + (-18x + 19/10) I(1/20 <= x < 1/10) + (-x/9 + 1/9) I(x >= 1/10)",
        _spike,
    ),
    RelationSpec(
        "lopsided_l_shaped",
        "Lopsided L-shaped",
        "y = 200x I(x < 1/200) + (-198x + 199/100) I(1/200 <= x < 1/100) + (-x/99 + 1/99) I(x >= 1/100)",
        _lopsided_l_shaped,
    ),
)

_BY_ID = {spec.id: spec for spec in _CATALOG}

# Strictly increasing on [0, 1]; the only catalog members where x -> f(x) is
# invertible, which the self-equitability probe requires.
STRICTLY_MONOTONE_IDS = ("line", "exp_2x", "exp_10x")


def list_relations() -> list[RelationSpec]:
    """All 21 relation specs, in catalog order (stable across runs)."""
    return list(_CATALOG)


def get_relation(rel: str | RelationSpec) -> RelationSpec:
    """Resolve an id string (or pass a spec through); raises ValueError on unknown ids."""
    if isinstance(rel, RelationSpec):
        return rel
    spec = _BY_ID.get(rel)
    if spec is None:
        known = ", ".join(sorted(_BY_ID))
        raise ValueError(f"unknown relation {rel!r}; known ids: {known}")
    return spec


def sample_x(n: int, seed: int) -> np.ndarray:
    """n iid draws from U(0, 1), deterministic for a fixed seed."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    return rng.random(n)


def eval_relation(rel: str | RelationSpec, x: np.ndarray) -> np.ndarray:
    """Evaluate the noise-free f(x) for one catalog relation."""
    spec = get_relation(rel)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("x must be finite")
    return spec.fn(x)
