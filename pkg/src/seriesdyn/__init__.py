"""Truncated time-power-series solutions of polynomial ODE systems.

The library solves autonomous systems dx/dt = f(x) with polynomial f by
direct Taylor recursion about t = 0, builds the homotopy-style
order-by-order expansion and verifies that it collapses onto that same
Taylor series, and then quantifies where the local series stops being
useful: coefficient-based radius-of-convergence estimates, closed-form
oracles with their movable singularities, an adaptive Runge-Kutta
integrator as the global reference, and fixed-point classification for
the phase-plane structure no local series can see.
"""

from .errors import (
    DegenerateError,
    DimensionError,
    InsufficientOrderError,
    IntegrationFailedError,
    ModelFileError,
    NotAFixedPointError,
    RangeError,
    SeriesDynError,
    SingularityError,
)
from .exact import (
    PolarInit,
    Singularity,
    logistic_exact,
    logistic_singularity,
    polar_init,
    spiral_exact,
    spiral_singularity,
)
from .integrate import IntegrationConfig, Trajectory, integrate, sample
from .model import (
    InitialValueProblem,
    Logistic,
    Monomial,
    PolyVectorField,
    Polynomial,
    Spiral,
    TwoSpecies,
    eval_field,
    field_jacobian,
    jacobian_at,
    preset_ivp,
)
from .phase import CLASSIFICATIONS, CriticalPoint, classify, fixed_points
from .series import (
    HpmExpansion,
    RadiusEstimate,
    TaylorSolution,
    TruncatedSeries,
    hpm_collapse_check,
    hpm_solve,
    poly_apply_series,
    radius_estimate,
    series_eval,
    series_mul,
    taylor_solve,
)

__version__ = "0.1.0"

__all__ = [
    "SeriesDynError", "DimensionError", "SingularityError", "DegenerateError",
    "InsufficientOrderError", "NotAFixedPointError", "RangeError",
    "ModelFileError", "IntegrationFailedError",
    "Monomial", "Polynomial", "PolyVectorField", "InitialValueProblem",
    "Logistic", "TwoSpecies", "Spiral",
    "eval_field", "field_jacobian", "jacobian_at", "preset_ivp",
    "TruncatedSeries", "TaylorSolution", "HpmExpansion", "RadiusEstimate",
    "series_mul", "poly_apply_series", "taylor_solve", "hpm_solve",
    "hpm_collapse_check", "series_eval", "radius_estimate",
    "Singularity", "PolarInit", "logistic_exact", "logistic_singularity",
    "polar_init", "spiral_exact", "spiral_singularity",
    "IntegrationConfig", "Trajectory", "integrate", "sample",
    "CLASSIFICATIONS", "CriticalPoint", "fixed_points", "classify",
    "__version__",
]
