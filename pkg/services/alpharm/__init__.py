"""
Alpharm - alpha-harmonic functions on the unit disk
- Special functions (Gamma, Gauss 2F1) and the Poisson-type kernel K_alpha
- Series solutions of the Dirichlet problem and their derivatives
- Schwarz-Pick, Heinz and Colonna type bounds, Landau univalence radii
"""

__version__ = "1.0.0"

from .bounds import BoundReport, bound_curves, coeff_extremal_solution, harmonic_reference
from .exceptions import (
    AlphaHarmonicError,
    AliasingError,
    ConvergenceError,
    DomainError,
    InputFormatError,
    VerificationFailure,
)
from .kernel import AlphaParameter, DiskPoint, kernel_gradients, kernel_mean, kernel_mean_slope, kernel_value
from .landau import LandauInputs, LandauResult, landau_bounded, landau_hardy, minimize_mu, solve_rho
from .solution import (
    BoundaryData,
    SeriesSolution,
    WirtingerPair,
    evaluate,
    from_boundary,
    poisson_integral,
    wirtinger_derivatives,
)
from .special import c_alpha, gamma_fn, hyp2f1, hyp2f1_dx
from .verification import verify_solution

__all__ = [
    "__version__",
    "AlphaHarmonicError",
    "AliasingError",
    "ConvergenceError",
    "DomainError",
    "InputFormatError",
    "VerificationFailure",
    "AlphaParameter",
    "DiskPoint",
    "BoundaryData",
    "SeriesSolution",
    "WirtingerPair",
    "BoundReport",
    "LandauInputs",
    "LandauResult",
    "gamma_fn",
    "c_alpha",
    "hyp2f1",
    "hyp2f1_dx",
    "kernel_value",
    "kernel_gradients",
    "kernel_mean",
    "kernel_mean_slope",
    "from_boundary",
    "evaluate",
    "wirtinger_derivatives",
    "poisson_integral",
    "bound_curves",
    "harmonic_reference",
    "coeff_extremal_solution",
    "solve_rho",
    "minimize_mu",
    "landau_hardy",
    "landau_bounded",
    "verify_solution",
]
