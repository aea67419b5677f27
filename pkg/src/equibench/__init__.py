"""equibench: noise-controlled synthetic relationships, dependence measures,
and equitability benchmarking."""

__version__ = "0.1.0"

from .errors import (
    DegenerateInputError,
    DegenerateNoiseError,
    DegenerateSignalError,
    NoRealRootError,
    SizeCapError,
)
from .relations import (
    RelationSpec,
    STRICTLY_MONOTONE_IDS,
    eval_relation,
    get_relation,
    list_relations,
    sample_x,
)
from .noise import (
    NoiseTarget,
    NoisyDataset,
    NoisyModelPair,
    exact_ssnr_adjust,
    heuristic_ssnr_noise,
    make_msnr_equal_pair,
    make_noisy_dataset,
    msnr,
    msnr_to_r2,
    scale_noise_to_msnr,
    ssnr,
)
from .measures import MeasureScore, default_params, list_measures, score
from .independence import (
    PowerEstimate,
    critical_value,
    estimate_power,
    permutation_null,
    wilson_interval,
)
from .seeding import derive_seed
from .suite import (
    SUBSET_EXCLUDED,
    EquitabilityReport,
    ExperimentConfig,
    PowerTable,
    ScoreTable,
    equitability_spread,
    run_equitability,
    run_power_equitability,
    self_equitability_check,
    validate_config,
)
from .config import default_config_text, load_config, parse_config

__all__ = [
    "DegenerateInputError",
    "DegenerateNoiseError",
    "DegenerateSignalError",
    "NoRealRootError",
    "SizeCapError",
    "RelationSpec",
    "STRICTLY_MONOTONE_IDS",
    "eval_relation",
    "get_relation",
    "list_relations",
    "sample_x",
    "NoiseTarget",
    "NoisyDataset",
    "NoisyModelPair",
    "exact_ssnr_adjust",
    "heuristic_ssnr_noise",
    "make_msnr_equal_pair",
    "make_noisy_dataset",
    "msnr",
    "msnr_to_r2",
    "scale_noise_to_msnr",
    "ssnr",
    "MeasureScore",
    "default_params",
    "list_measures",
    "score",
    "PowerEstimate",
    "critical_value",
    "estimate_power",
    "permutation_null",
    "wilson_interval",
    "derive_seed",
    "SUBSET_EXCLUDED",
    "EquitabilityReport",
    "ExperimentConfig",
    "PowerTable",
    "ScoreTable",
    "equitability_spread",
    "run_equitability",
    "run_power_equitability",
    "self_equitability_check",
    "validate_config",
    "default_config_text",
    "load_config",
    "parse_config",
]
