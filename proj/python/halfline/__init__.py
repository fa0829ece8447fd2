"""Eigenvalue asymptotics for -u'' + (x^m + P(x)) u = E u on the half-line."""

from ._core import (
    AsymptoticModel,
    BoundaryCondition,
    EigenvalueRecord,
    FitResult,
    HalflineError,
    K_closed,
    K_quad,
    L_quad,
    L_series,
    N_numeric,
    PotentialSpec,
    ShootingConfig,
    En0,
    b_j,
    beta,
    build_e,
    cpow,
    fit_e,
    gen_binomial,
    lngamma,
    nu,
    recover_a,
    scan,
    titchmarsh_count,
)

__version__ = "1.0.0"
