"""Adaptive-sampling sequence design: python bindings for the C++ core."""

from dbas._core import (
    DbasError,
    IterationRow,
    MixtureModel,
    MlpOracle,
    PwmModel,
    RunRecord,
    dbas_run,
    decode_one_hot,
    effective_sample_size,
    encode_one_hot,
    enumerate_scores,
    fit_mixture_em,
    fit_pwm,
    fit_sigma_ml,
    fraction_of_possible_gain,
    load_oracle,
    log_likelihood_mixture,
    log_likelihood_pwm,
    make_random_oracle,
    marginal_design,
    oracle_from_json,
    product_prob,
    random_design,
    run_experiment_json,
    sample_mixture,
    sample_pwm,
    save_oracle,
    translate,
    update_threshold_max,
    update_width_spec,
)
from dbas._core import count_synonymous_str as _count_synonymous_str


def count_synonymous(protein: str) -> int:
    """Exact number of DNA sequences translating to the protein."""
    return int(_count_synonymous_str(protein))


__all__ = [
    "DbasError",
    "IterationRow",
    "MixtureModel",
    "MlpOracle",
    "PwmModel",
    "RunRecord",
    "count_synonymous",
    "dbas_run",
    "decode_one_hot",
    "effective_sample_size",
    "encode_one_hot",
    "enumerate_scores",
    "fit_mixture_em",
    "fit_pwm",
    "fit_sigma_ml",
    "fraction_of_possible_gain",
    "load_oracle",
    "log_likelihood_mixture",
    "log_likelihood_pwm",
    "make_random_oracle",
    "marginal_design",
    "oracle_from_json",
    "product_prob",
    "random_design",
    "run_experiment_json",
    "sample_mixture",
    "sample_pwm",
    "save_oracle",
    "translate",
    "update_threshold_max",
    "update_width_spec",
]
