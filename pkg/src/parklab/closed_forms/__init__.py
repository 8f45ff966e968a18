from .abel import AbelCase, abel_A, abel_closed_forms, compositions
from .formulas import (
    LastPrefFamily,
    check_distribution,
    exact_weights,
    mean_from_distribution,
    mean_last_pref,
    pf_probability_formula,
    poisson_factor,
    q_last_pref,
    q_vector,
    weights,
)
from .poisson import poisson_cdf, reg_upper_gamma

__all__ = [
    "AbelCase",
    "LastPrefFamily",
    "abel_A",
    "abel_closed_forms",
    "check_distribution",
    "compositions",
    "exact_weights",
    "mean_from_distribution",
    "mean_last_pref",
    "pf_probability_formula",
    "poisson_cdf",
    "poisson_factor",
    "q_last_pref",
    "q_vector",
    "reg_upper_gamma",
    "weights",
]
