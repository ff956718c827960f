"""Spectral toolkit for the Gribov Hamiltonian in Bargmann space.

Thin re-export of the compiled core: four independent pipelines (Jacobi
truncation, Frobenius series + shooting, half-line Schrodinger transform,
inverse-kernel Nystrom) for the spectrum of H = mu*N + i*lambda*H_I.
"""

from gribov._core import (
    ConvergenceError,
    ConvergenceStudy,
    DomainTruncationError,
    EigenPair,
    GribovParams,
    HalfLineSolution,
    HsStudy,
    InvariantViolation,
    NoRootError,
    NystromResult,
    SeriesSolution,
    ShootingResult,
    apply_inverse_polynomial,
    convergence_study,
    default_positive_extent,
    dominating_kernel,
    eigen_spectrum,
    evaluate_series,
    find_shooting_brackets,
    frobenius_coefficients,
    halfline_potential,
    hs_norm_study,
    kernel_negative_axis,
    kernel_positive_axis,
    max_imag_ratio,
    min_real_part,
    nystrom_spectrum,
    shoot_eigenvalue,
    solve_halfline,
    spectral_positive_extent,
    weight_theta,
)

__all__ = [
    "ConvergenceError",
    "ConvergenceStudy",
    "DomainTruncationError",
    "EigenPair",
    "GribovParams",
    "HalfLineSolution",
    "HsStudy",
    "InvariantViolation",
    "NoRootError",
    "NystromResult",
    "SeriesSolution",
    "ShootingResult",
    "apply_inverse_polynomial",
    "convergence_study",
    "default_positive_extent",
    "dominating_kernel",
    "eigen_spectrum",
    "evaluate_series",
    "find_shooting_brackets",
    "frobenius_coefficients",
    "halfline_potential",
    "hs_norm_study",
    "kernel_negative_axis",
    "kernel_positive_axis",
    "max_imag_ratio",
    "min_real_part",
    "nystrom_spectrum",
    "shoot_eigenvalue",
    "solve_halfline",
    "spectral_positive_extent",
    "weight_theta",
]
