"""Experiment orchestration: score equitability and power equitability.

Both experiments reduce to long tables keyed by (measure, relation, rep) or
(measure, relation, noise level). Every cell is seeded by hashing identities,
never list positions, so reordering the config or changing the worker count
cannot change any value.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .independence import PowerEstimate, estimate_power
from .measures import MEASURE_IDS, get_measure
from .measures import score as score_measure
from .noise import (
    NoiseTarget,
    make_msnr_equal_pair,
    make_noisy_dataset,
    msnr,
    noise_for_signal,
    scale_noise_to_msnr,
)
from .relations import STRICTLY_MONOTONE_IDS, eval_relation, get_relation, list_relations, sample_x
from .seeding import derive_seed

# the four relations whose score distributions degenerate at moderate noise
# (hard saturation or isolated support); the default comparison subset drops them
SUBSET_EXCLUDED = ("sigmoid", "lopsided_l_shaped", "l_shaped", "spike")

_ALL_RELATION_IDS = tuple(r.id for r in list_relations())


def _as_relation_id(rel) -> str:
    return rel.id if hasattr(rel, "id") else str(rel)


@dataclass(frozen=True)
class ExperimentConfig:
    """Desk-scale experiment description.

    Defaults are sized for a workstation run; the reference protocol uses
    n = 5000 with 100 scoring and 300 power replicates.
    """

    relations: tuple = _ALL_RELATION_IDS
    measures: tuple = MEASURE_IDS
    noise: tuple = (NoiseTarget("msnr", 11.529),)
    n: int = 500
    score_reps: int = 50
    power_reps: int = 100
    alpha: float = 0.05
    base_seed: int = 0
    permutations: int = 200
    n_overrides: dict = field(default_factory=lambda: {"hhg": 256})
    measure_params: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(_as_relation_id(r) for r in self.relations))
        object.__setattr__(self, "measures", tuple(self.measures))
        noise = self.noise if isinstance(self.noise, (tuple, list)) else (self.noise,)
        object.__setattr__(self, "noise", tuple(noise))
        object.__setattr__(self, "n_overrides", dict(self.n_overrides))
        object.__setattr__(
            self,
            "measure_params",
            {
                k: dict(v) if isinstance(v, dict) else v
                for k, v in dict(self.measure_params).items()
            },
        )
        problems = validate_config(self)
        if problems:
            raise ValueError("invalid config:\n- " + "\n- ".join(problems))

    def effective_n(self, measure_id: str) -> int:
        return int(self.n_overrides.get(measure_id, self.n))


def validate_config(cfg: ExperimentConfig) -> list[str]:
    """Every violation, not just the first."""
    problems = []
    if not cfg.relations:
        problems.append("relations: must not be empty")
    for rid in cfg.relations:
        try:
            get_relation(rid)
        except ValueError:
            problems.append(f"relations: unknown id {rid!r}")
    if not cfg.measures:
        problems.append("measures: must not be empty")
    for m in cfg.measures:
        try:
            if get_measure(m).fn is None:
                problems.append(f"measures: {m!r} has no implementation registered")
        except ValueError:
            problems.append(f"measures: unknown id {m!r}")
    if not cfg.noise:
        problems.append("noise: must not be empty")
    for t in cfg.noise:
        if not isinstance(t, NoiseTarget):
            problems.append(f"noise: expected NoiseTarget, got {t!r}")
        elif t.kind == "msnr" and t.ratio <= 1.0:
            problems.append(
                f"noise: msnr ratio must be > 1 (signal adds variance on top of noise), got {t.ratio}"
            )
    if cfg.n < 3:
        problems.append(f"n: must be >= 3, got {cfg.n}")
    if cfg.score_reps < 2:
        problems.append(f"score_reps: must be >= 2, got {cfg.score_reps}")
    if cfg.power_reps < 30:
        problems.append(f"power_reps: must be >= 30, got {cfg.power_reps}")
    if not 0.0 < cfg.alpha < 1.0:
        problems.append(f"alpha: must be in (0, 1), got {cfg.alpha}")
    if cfg.permutations < 20:
        problems.append(f"permutations: must be >= 20, got {cfg.permutations}")
    for m, nv in cfg.n_overrides.items():
        if m not in cfg.measures:
            problems.append(f"n_overrides: {m!r} is not a configured measure")
        elif int(nv) < 3:
            problems.append(f"n_overrides: {m} must be >= 3, got {nv}")
    for m, pv in cfg.measure_params.items():
        if m not in cfg.measures:
            problems.append(f"measure_params: {m!r} is not a configured measure")
        elif not isinstance(pv, dict):
            problems.append(f"measure_params: {m} must map to a dict, got {pv!r}")
    return problems


@dataclass(frozen=True)
class ScoreCell:
    measure: str
    relation: str
    rep: int
    score: float
    achieved_ratio: float


@dataclass(frozen=True)
class CellFailure:
    measure: str
    relation: str
    key: object  # rep index or noise level
    message: str


@dataclass(frozen=True)
class ScoreTable:
    cells: tuple
    failures: tuple
    achieved: dict  # (relation, rep, n) -> measured ratio
    config: ExperimentConfig


@dataclass(frozen=True)
class PowerTable:
    cells: tuple  # PowerEstimate, config order
    failures: tuple
    config: ExperimentConfig


@dataclass(frozen=True)
class EquitabilityReport:
    cell_means: dict  # (measure, relation) -> mean score over completed reps
    cell_sds: dict
    spread_sd: dict  # measure -> sd of per-relation means
    spread_range: dict
    subset_sd: dict
    subset: tuple


def _score_batch(cfg: ExperimentConfig, target: NoiseTarget, rep: int, n_eff: int, measures):
    """Datasets for one replicate at one sample size, scored by one measure group.

    One x draw is shared by all relations; the msnr route additionally shares
    the noise realization, scaled per relation so every model carries the same
    defining variance ratio.
    """
    rows, fails, achieved = [], [], []
    x = sample_x(n_eff, derive_seed(cfg.base_seed, "x", rep, n_eff))
    datasets = {}
    if target.kind == "msnr":
        rng = np.random.default_rng(derive_seed(cfg.base_seed, "eps", rep, n_eff))
        try:
            eps_ref = scale_noise_to_msnr(
                eval_relation("line", x), rng.standard_normal(n_eff), target.ratio
            )
        except ValueError as err:
            eps_ref = err
        for rid in cfg.relations:
            if isinstance(eps_ref, Exception):
                datasets[rid] = eps_ref
                continue
            try:
                pair = make_msnr_equal_pair("line", rid, x, eps_ref)
                eps2 = eps_ref / pair.scale_a
                datasets[rid] = (pair.y2, msnr(pair.y2, eps2))
            except ValueError as err:
                datasets[rid] = err
    else:
        for rid in cfg.relations:
            f = eval_relation(rid, x)
            try:
                eps, got = noise_for_signal(
                    f, target, derive_seed(cfg.base_seed, "ssnr", rid, rep, n_eff)
                )
                datasets[rid] = (f + eps, got)
            except ValueError as err:
                datasets[rid] = err

    for rid in cfg.relations:
        got = datasets[rid]
        if isinstance(got, Exception):
            for m in measures:
                fails.append(CellFailure(m, rid, rep, f"generation failed: {got}"))
            continue
        y, ratio = got
        achieved.append((rid, rep, n_eff, ratio))
        for m in measures:
            try:
                val = score_measure(
                    m,
                    x,
                    y,
                    cfg.measure_params.get(m),
                    seed=derive_seed(cfg.base_seed, "mseed", m, rid, rep),
                ).value
            except ValueError as err:
                fails.append(CellFailure(m, rid, rep, str(err)))
                continue
            rows.append(ScoreCell(m, rid, rep, val, ratio))
    return rows, fails, achieved


def run_equitability(cfg: ExperimentConfig, threads: int = 1) -> ScoreTable:
    """Score every configured measure on every relation, score_reps times.

    Requires a single configured noise level (the common target all relations
    are held to). Failed cells are recorded and excluded, never zero-filled.
    """
    if len(cfg.noise) != 1:
        raise ValueError(
            f"score equitability needs exactly one noise level, got {len(cfg.noise)}"
        )
    target = cfg.noise[0]
    groups: dict[int, list] = {}
    for m in cfg.measures:
        groups.setdefault(cfg.effective_n(m), []).append(m)
    items = [
        (rep, n_eff, tuple(ms))
        for rep in range(cfg.score_reps)
        for n_eff, ms in groups.items()
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(lambda it: _score_batch(cfg, target, *it), items))
    else:
        batches = [_score_batch(cfg, target, *it) for it in items]

    by_key, fail_by_key, achieved = {}, {}, {}
    for rows, fails, got in batches:
        for c in rows:
            by_key[(c.measure, c.relation, c.rep)] = c
        for fl in fails:
            fail_by_key[(fl.measure, fl.relation, fl.key)] = fl
        for rid, rep, n_eff, ratio in got:
            achieved[(rid, rep, n_eff)] = ratio

    cells, failures = [], []
    for m in cfg.measures:
        for rid in cfg.relations:
            for rep in range(cfg.score_reps):
                if (m, rid, rep) in by_key:
                    cells.append(by_key[(m, rid, rep)])
                elif (m, rid, rep) in fail_by_key:
                    failures.append(fail_by_key[(m, rid, rep)])
    return ScoreTable(
        cells=tuple(cells), failures=tuple(failures), achieved=achieved, config=cfg
    )


def equitability_spread(table: ScoreTable, subset: tuple | None = None) -> EquitabilityReport:
    """Reduce a score table to per-measure dispersion of per-relation means.

    spread_sd is the sample sd over relations of the per-relation mean score
    (0 when only one relation is present); spread_range is max minus min.
    subset_sd repeats the sd over `subset`, defaulting to the configured
    relations minus SUBSET_EXCLUDED.
    """
    cfg = table.config
    if subset is None:
        subset = tuple(r for r in cfg.relations if r not in SUBSET_EXCLUDED)
    else:
        subset = tuple(_as_relation_id(r) for r in subset)

    values: dict[tuple, list] = {}
    for c in table.cells:
        values.setdefault((c.measure, c.relation), []).append(c.score)
    cell_means = {k: float(np.mean(v)) for k, v in values.items()}
    cell_sds = {
        k: float(np.std(v, ddof=1)) if len(v) > 1 else 0.0 for k, v in values.items()
    }

    def _sd(vals):
        return float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0

    spread_sd, spread_range, subset_sd = {}, {}, {}
    for m in cfg.measures:
        means = [cell_means[(m, r)] for r in cfg.relations if (m, r) in cell_means]
        sub = [cell_means[(m, r)] for r in subset if (m, r) in cell_means]
        if not means:
            continue
        spread_sd[m] = _sd(means)
        spread_range[m] = float(max(means) - min(means))
        subset_sd[m] = _sd(sub)
    return EquitabilityReport(
        cell_means=cell_means,
        cell_sds=cell_sds,
        spread_sd=spread_sd,
        spread_range=spread_range,
        subset_sd=subset_sd,
        subset=subset,
    )


def run_power_equitability(cfg: ExperimentConfig, threads: int = 1) -> PowerTable:
    """estimate_power for every (measure, relation, noise level) cell."""

    def _one(item):
        m, rid, target = item
        try:
            est = estimate_power(
                m,
                rid,
                target,
                n=cfg.effective_n(m),
                reps=cfg.power_reps,
                alpha=cfg.alpha,
                B=cfg.permutations,
                seed=derive_seed(
                    cfg.base_seed, "power", m, rid, target.kind, repr(target.ratio)
                ),
                params=cfg.measure_params.get(m),
            )
            return item, est, None
        except (ValueError, RuntimeError) as err:
            return item, None, str(err)

    items = [
        (m, rid, target)
        for m in cfg.measures
        for rid in cfg.relations
        for target in cfg.noise
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            done = list(pool.map(_one, items))
    else:
        done = [_one(it) for it in items]

    cells, failures = [], []
    for (m, rid, target), est, err in done:
        if est is not None:
            cells.append(est)
        else:
            failures.append(CellFailure(m, rid, target, err))
    return PowerTable(cells=tuple(cells), failures=tuple(failures), config=cfg)


def self_equitability_check(
    measure_id: str,
    relation,
    n: int,
    reps: int,
    seed: int,
    noise: NoiseTarget = NoiseTarget("msnr", 11.529),
    params: dict | None = None,
) -> tuple[float, float]:
    """Mean and sd of |D(x, y) - D(f(x), y)| over noisy replicates.

    Only strictly monotone relations qualify: the comparison needs f(x) to
    carry exactly the information of x, which fails for non-injective f.
    """
    rel = get_relation(relation)
    if rel.id not in STRICTLY_MONOTONE_IDS:
        raise ValueError(
            f"self-equitability probe needs a strictly monotone relation, got {rel.id!r}"
        )
    deltas = []
    for rep in range(reps):
        ds = make_noisy_dataset(rel, n, noise, derive_seed(seed, "selfeq", rel.id, rep))
        f = ds.y - ds.eps
        mseed = derive_seed(seed, "selfeq-m", measure_id, rel.id, rep)
        d_x = score_measure(measure_id, ds.x, ds.y, params, seed=mseed).value
        d_f = score_measure(measure_id, f, ds.y, params, seed=mseed).value
        deltas.append(abs(d_x - d_f))
    sd = float(np.std(deltas, ddof=1)) if len(deltas) > 1 else 0.0
    return float(np.mean(deltas)), sd
