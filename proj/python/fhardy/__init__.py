"""Regional fractional Laplacian on (-1, 1) and sharp fractional Hardy inequalities."""

from ._core import (
    DomainError,
    NonConvergenceError,
    TestFunction,
    beta,
    constants,
    convex_check,
    ground_state_potential,
    hardy_check,
    kappa,
    killed_check,
    killed_constant,
    laplacian_power,
    min_rayleigh,
    phi,
    regional_laplacian,
    sharpness_sweep,
    verify_identity,
)

__all__ = [
    "DomainError",
    "NonConvergenceError",
    "TestFunction",
    "beta",
    "constants",
    "convex_check",
    "ground_state_potential",
    "hardy_check",
    "kappa",
    "killed_check",
    "killed_constant",
    "laplacian_power",
    "min_rayleigh",
    "phi",
    "regional_laplacian",
    "sharpness_sweep",
    "verify_identity",
]
