"""Truncated exponential distributions and the Langevin function."""

__version__ = "0.1.0"

from .errors import ConvergenceError, DomainError, InsufficientDataError, UnfittableError
from .estimate import FitResult, GoodnessReport, SampleSummary, fit_gamma, goodness_variance, summarize
from .langevin import (
    InverseTolerance,
    inv_langevin,
    inv_langevin_pade,
    langevin,
    langevin_derivative,
    solve_inv_langevin,
)
from .truncexp import (
    CumulantPoly,
    MomentResult,
    TruncExp,
    cdf,
    cgf,
    cumulant,
    cumulant_poly,
    mean,
    mgf,
    moments,
    pdf,
    quantile,
    sample,
    variance,
)
