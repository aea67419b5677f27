"""Ten dependence statistics behind one uniform interface.

Each measure is a pure function of (x, y) plus measure-specific parameters;
randomized measures take an explicit seed. Two extra ids, "cdc" and
"curvecor", are reserved as pluggable slots with no bundled implementation:
registering a callable under those ids makes them scoreable.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class MeasureScore:
    measure: str
    value: float
    n: int
    params: dict


@dataclass(frozen=True)
class MeasureInfo:
    id: str
    fn: Callable | None
    defaults: dict
    needs_seed: bool = False


_REGISTRY: dict[str, MeasureInfo] = {}

# canonical ordering for reports and CLI listings
MEASURE_IDS = ("pcor", "scor", "kcor", "dcor", "hsic", "mi", "mic", "rdc", "ace", "hhg")
PLACEHOLDER_IDS = ("cdc", "curvecor")


def register_measure(
    measure_id: str,
    fn: Callable | None,
    defaults: dict | None = None,
    needs_seed: bool = False,
) -> None:
    """Add or replace a measure implementation.

    fn(x, y, **params) -> float, with a `seed` keyword when needs_seed.
    fn=None declares a named slot that errors until an implementation arrives.
    """
    _REGISTRY[measure_id] = MeasureInfo(measure_id, fn, dict(defaults or {}), needs_seed)


def get_measure(measure_id: str) -> MeasureInfo:
    info = _REGISTRY.get(measure_id)
    if info is None:
        raise ValueError(
            f"unknown measure {measure_id!r}; known: {', '.join(sorted(_REGISTRY))}"
        )
    return info


def list_measures(include_placeholders: bool = False) -> list[str]:
    """Implemented measure ids in canonical order (plus declared empty slots on request)."""
    out = [m for m in MEASURE_IDS if _REGISTRY[m].fn is not None]
    if include_placeholders:
        out += [m for m in _REGISTRY if m not in MEASURE_IDS]
    return out


def default_params(measure_id: str) -> dict:
    return dict(get_measure(measure_id).defaults)


def score(
    measure_id: str,
    x: np.ndarray,
    y: np.ndarray,
    params: dict | None = None,
    seed: int = 0,
) -> MeasureScore:
    """Evaluate one measure on a paired sample and record the parameters used."""
    info = get_measure(measure_id)
    if info.fn is None:
        raise NotImplementedError(
            f"measure {measure_id!r} is a declared slot with no implementation; "
            "supply one via register_measure"
        )
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1 or x.shape != y.shape:
        raise ValueError("x and y must be equal-length 1-d vectors")
    merged = dict(info.defaults)
    if params:
        unknown = set(params) - set(info.defaults)
        if unknown:
            raise ValueError(f"unknown {measure_id} parameters: {sorted(unknown)}")
        merged.update(params)
    if info.needs_seed:
        value = info.fn(x, y, seed=seed, **merged)
    else:
        value = info.fn(x, y, **merged)
    return MeasureScore(measure=measure_id, value=float(value), n=len(x), params=merged)


from .corr import kendall, pearson, spearman
from .dcor import distance_correlation
from .hsic import hsic
from .mi import mutual_information
from .mic import mic
from .rdc import rdc
from .ace import ace
from .hhg import hhg

register_measure("pcor", pearson)
register_measure("scor", spearman)
register_measure("kcor", kendall)
register_measure("dcor", distance_correlation)
register_measure("hsic", hsic)
register_measure("mi", mutual_information, {"k": 6, "normalized": False})
register_measure("mic", mic, {"alpha_exponent": 0.6, "clumps_factor": 15})
register_measure("rdc", rdc, {"k": 20, "s": 1.0 / 6.0}, needs_seed=True)
register_measure("ace", ace, {"max_iter": 100, "tol": 1e-6})
register_measure("hhg", hhg, {"size_cap": 512})

# declared-but-not-bundled slots
register_measure("cdc", None)
register_measure("curvecor", None)

__all__ = [
    "MEASURE_IDS",
    "PLACEHOLDER_IDS",
    "MeasureInfo",
    "MeasureScore",
    "ace",
    "default_params",
    "distance_correlation",
    "get_measure",
    "hhg",
    "hsic",
    "kendall",
    "list_measures",
    "mic",
    "mutual_information",
    "pearson",
    "rdc",
    "register_measure",
    "score",
    "spearman",
]
