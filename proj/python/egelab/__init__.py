"""Elliptic Ginibre ensemble laboratory."""

from ._egelab import (
    DimensionError,
    DomainError,
    UnsupportedError,
    asymptotic_second_moment,
    cheb_poly,
    compute_U,
    cov_table,
    eigenvalues,
    exact_second_moment,
    exact_trace_expectation,
    f_value,
    g_inverse,
    g_map,
    h_coeff,
    limit_second_moment,
    log_f,
    mc_moments,
    outlier_count,
    portrait_ppm,
    run_cli,
    sample_ege,
    sample_f_limit,
)

__all__ = [
    "DimensionError",
    "DomainError",
    "UnsupportedError",
    "asymptotic_second_moment",
    "cheb_poly",
    "compute_U",
    "cov_table",
    "eigenvalues",
    "exact_second_moment",
    "exact_trace_expectation",
    "f_value",
    "g_inverse",
    "g_map",
    "h_coeff",
    "limit_second_moment",
    "log_f",
    "mc_moments",
    "outlier_count",
    "portrait_ppm",
    "run_cli",
    "sample_ege",
    "sample_f_limit",
]
