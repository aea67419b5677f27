"""Experiment config files: flat INI sections mirroring ExperimentConfig.

Parsing collects every problem it can find (unknown sections and keys, bad
numbers, invalid values) and raises once with the full list, so a config is
fixable in one edit round.
"""
from __future__ import annotations

import configparser

from .measures import MEASURE_IDS
from .noise import NoiseTarget
from .relations import list_relations
from .suite import ExperimentConfig

DEFAULT_CONFIG = """\
# equibench experiment configuration
#
# Used by both the `equitability` (scoring) and `power` commands. Lists are
# comma-separated; `all` expands to the full catalog.

[experiment]
relations = all
measures = all
# points per dataset; per-measure exceptions go in [n_overrides]
n = 500
# replicates for the scoring experiment (reference protocol: 100)
score_reps = 50
# replicates per power cell (reference protocol: 300)
power_reps = 100
# significance level for the permutation test
alpha = 0.05
base_seed = 0
# permutations per null distribution
permutations = 200

[noise]
# msnr = variance ratio var(y)/var(eps), must be > 1
# ssnr = power ratio sum(y^2)/sum(eps^2)
kind = msnr
# one ratio for scoring; several (comma-separated) sweep power levels
ratios = 11.529
# ssnr search only: acceptable |achieved - target| and random-search steps
tolerance = 0.03
max_steps = 100

[n_overrides]
# per-measure sample size (the pairwise-distance test gets expensive fast)
hhg = 256
"""

_EXPERIMENT_KEYS = {
    "relations",
    "measures",
    "n",
    "score_reps",
    "power_reps",
    "alpha",
    "base_seed",
    "permutations",
}
_NOISE_KEYS = {"kind", "ratios", "tolerance", "max_steps"}


def default_config_text() -> str:
    return DEFAULT_CONFIG


def _split_list(raw: str) -> list[str]:
    return [tok.strip() for tok in raw.split(",") if tok.strip()]


def parse_config(text: str) -> ExperimentConfig:
    """Parse INI text into a validated ExperimentConfig.

    Raises ValueError listing every violation found.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as err:
        raise ValueError(f"invalid config:\n- not parseable as INI: {err}") from err

    problems: list[str] = []
    for section in parser.sections():
        if section not in ("experiment", "noise", "n_overrides"):
            problems.append(f"unknown section [{section}]")

    exp = parser["experiment"] if parser.has_section("experiment") else {}
    noi = parser["noise"] if parser.has_section("noise") else {}
    for key in exp:
        if key not in _EXPERIMENT_KEYS:
            problems.append(f"[experiment] unknown key {key!r}")
    for key in noi:
        if key not in _NOISE_KEYS:
            problems.append(f"[noise] unknown key {key!r}")

    def _typed(section, mapping, key, cast, fallback):
        raw = mapping.get(key)
        if raw is None:
            return fallback
        try:
            return cast(raw)
        except ValueError:
            problems.append(f"[{section}] {key}: cannot parse {raw!r} as {cast.__name__}")
            return fallback

    relations = _split_list(exp.get("relations", "all"))
    if relations == ["all"]:
        relations = [r.id for r in list_relations()]
    measures = _split_list(exp.get("measures", "all"))
    if measures == ["all"]:
        measures = list(MEASURE_IDS)

    n = _typed("experiment", exp, "n", int, 500)
    score_reps = _typed("experiment", exp, "score_reps", int, 50)
    power_reps = _typed("experiment", exp, "power_reps", int, 100)
    alpha = _typed("experiment", exp, "alpha", float, 0.05)
    base_seed = _typed("experiment", exp, "base_seed", int, 0)
    permutations = _typed("experiment", exp, "permutations", int, 200)

    kind = noi.get("kind", "msnr").strip()
    ratios = []
    for tok in _split_list(noi.get("ratios", "11.529")):
        try:
            ratios.append(float(tok))
        except ValueError:
            problems.append(f"[noise] ratios: cannot parse {tok!r} as float")
    tolerance = _typed("noise", noi, "tolerance", float, 0.03)
    max_steps = _typed("noise", noi, "max_steps", int, 100)

    targets = []
    if kind not in ("msnr", "ssnr"):
        problems.append(f"[noise] kind must be msnr or ssnr, got {kind!r}")
    else:
        for ratio in ratios:
            try:
                targets.append(NoiseTarget(kind, ratio, tolerance, max_steps))
            except ValueError as err:
                problems.append(f"[noise] {err}")

    overrides = {}
    if parser.has_section("n_overrides"):
        for key, raw in parser["n_overrides"].items():
            try:
                overrides[key] = int(raw)
            except ValueError:
                problems.append(f"[n_overrides] {key}: cannot parse {raw!r} as int")
    # drop overrides for measures not selected rather than erroring: the
    # template always carries the hhg line
    overrides = {k: v for k, v in overrides.items() if k in measures}

    if problems:
        raise ValueError("invalid config:\n- " + "\n- ".join(problems))
    return ExperimentConfig(
        relations=tuple(relations),
        measures=tuple(measures),
        noise=tuple(targets),
        n=n,
        score_reps=score_reps,
        power_reps=power_reps,
        alpha=alpha,
        base_seed=base_seed,
        permutations=permutations,
        n_overrides=overrides,
    )


def load_config(path: str) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
