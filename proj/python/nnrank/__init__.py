"""Nonnegative rank toolkit: certified rank bounds, perturbation probes,
nested-polygon geometry and NMF upper bounds for small matrices."""

from _nnrank import (  # noqa: F401
    Matrix,
    barycentric,
    build_family,
    critical_epsilon,
    evaluate_f,
    frobenius_distance,
    frobenius_norm,
    independence_residual,
    isorank_certificate,
    jacobian_matrix,
    load_matrix,
    maximal_rank_check,
    midpoint_probe,
    mixture_build,
    model_membership,
    nmf,
    non_density_probe,
    nonneg_rank,
    nnrank_upper,
    parse_matrix_json,
    rank,
    render_svg,
    sample_ball,
    semicontinuity_probe,
    to_stochastic,
)

__all__ = [
    "Matrix",
    "barycentric",
    "build_family",
    "critical_epsilon",
    "evaluate_f",
    "frobenius_distance",
    "frobenius_norm",
    "independence_residual",
    "isorank_certificate",
    "jacobian_matrix",
    "load_matrix",
    "maximal_rank_check",
    "midpoint_probe",
    "mixture_build",
    "model_membership",
    "nmf",
    "non_density_probe",
    "nonneg_rank",
    "nnrank_upper",
    "parse_matrix_json",
    "rank",
    "render_svg",
    "sample_ball",
    "semicontinuity_probe",
    "to_stochastic",
]

__version__ = "0.1.0"
