"""Quasi-Monte Carlo integration with respect to general measures."""

from ._qmk import (
    BudgetExceeded,
    GridFunction,
    Measure,
    chelson_tilde_g,
    chelson_transform,
    function_to_measure,
    halton,
    hk0_prefix,
    hk_variation,
    integral_under_measure,
    is_completely_monotone,
    jordan_decompose,
    kh_certificate,
    leonov_decompose,
    local_discrepancy,
    measure_to_function,
    mirror,
    product_transform,
    pseudo_inverse,
    qmc_estimate,
    random_search_lower_bound,
    star_discrepancy,
    total_variation,
    van_der_corput,
    vitali_variation,
)

__all__ = [
    "BudgetExceeded",
    "GridFunction",
    "Measure",
    "chelson_tilde_g",
    "chelson_transform",
    "function_to_measure",
    "halton",
    "hk0_prefix",
    "hk_variation",
    "integral_under_measure",
    "is_completely_monotone",
    "jordan_decompose",
    "kh_certificate",
    "leonov_decompose",
    "local_discrepancy",
    "measure_to_function",
    "mirror",
    "product_transform",
    "pseudo_inverse",
    "qmc_estimate",
    "random_search_lower_bound",
    "star_discrepancy",
    "total_variation",
    "van_der_corput",
    "vitali_variation",
]
