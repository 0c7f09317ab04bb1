"""Dual-solver toolkit for degenerate parabolic problems with variable-exponent
coefficients: a Crank-Nicolson PDE solver and a Feynman-Kac Euler-Maruyama
Monte Carlo estimator, cross-validated, plus executable well-posedness checks."""

from ._fkvx import (
    ComparisonReport,
    FellerReport,
    McEstimate,
    diffusion,
    drift,
    estimate_u,
    feller_test,
    gbm_quadrature_u,
    run_case,
    solve_pde,
    verify_case,
)

__all__ = [
    "ComparisonReport",
    "FellerReport",
    "McEstimate",
    "diffusion",
    "drift",
    "estimate_u",
    "feller_test",
    "gbm_quadrature_u",
    "run_case",
    "solve_pde",
    "verify_case",
]
