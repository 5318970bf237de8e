"""
Landau-Type Univalence Radii
- Decreasing profile phi and its unique root rho0 (bisection)
- Covering radius lower bound R0
- Hardy-space pipeline: mu(gamma) minimisation (golden section + derivative bisection) and M*
- Bounded-solution pipeline measuring beta = |J_f(0)| and M from a series solution
- Grid smoke checks for injectivity and covering
"""

import math
from typing import Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, Field

from .exceptions import ConvergenceError, DomainError
from .solution import (
    SeriesSolution,
    evaluate,
    evaluate_polar,
    sup_estimate,
    trace_sup_bound,
    wirtinger_derivatives,
)
from .special import c_alpha

RHO_UPPER = 1.0 - 1e-15
RHO_TOLERANCE = 1e-12
BISECTION_CAP = 200
GAMMA_LOWER = 1e-6
GAMMA_UPPER = 1.0 - 1e-6
GOLDEN_TOLERANCE = 1e-12
GOLDEN_CAP = 200
PRESCAN_POINTS = 10 ** 4
POLISH_WINDOW = 1e-4
PHI_RATIO = 2 / (1 + math.sqrt(5))
ORIGIN_TOLERANCE = 1e-12


class LandauInputs(BaseModel):
    """Constants of one univalence statement: scale is delta, beta or lambda; bound is M or M*"""
    alpha: float = Field(gt=-2)
    scale: float = Field(gt=0)
    bound: float = Field(gt=0)
    p: Optional[float] = Field(default=None, ge=1)
    hardy_norm: Optional[float] = Field(default=None, ge=0)

    def require_solution_range(self) -> None:
        if not (-1 < self.alpha <= 0):
            raise DomainError(f"univalence radii need alpha in (-1, 0], got {self.alpha}", "alpha")


class LandauResult(BaseModel):
    """Dilation gamma0, bound M*, root rho0, covering bound R0 and the resulting radii"""
    gamma0: float = Field(gt=0, le=1)
    mstar: float = Field(gt=0)
    rho0: float = Field(gt=0, lt=1)
    r0_lower: float = Field(ge=0)
    univalence_radius: float
    covering_radius: float


def phi_profile(x, inputs: LandauInputs):
    """delta/(M(2+alpha)) - (4Mx/pi)[(2-x)/(1-x)^2 + 2x/((1-x)(1-x^2)^2)] for x in [0, 1)"""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0) or np.any(arr >= 1):
        raise DomainError("phi is defined on [0, 1)", "x")
    M = inputs.bound
    bracket = (2 - arr) / (1 - arr) ** 2 + 2 * arr / ((1 - arr) * (1 - arr * arr) ** 2)
    values = inputs.scale / (M * (2 + inputs.alpha)) - 4 * M * arr / math.pi * bracket
    return float(values) if np.ndim(x) == 0 else values


def solve_rho(inputs: LandauInputs, tolerance: float = RHO_TOLERANCE) -> float:
    """
    Unique root of phi on (0, 1) by bisection

    Stops when |phi| <= tolerance or the bracket reaches floating-point resolution.
    """
    lo, hi = 0.0, RHO_UPPER
    for iteration in range(BISECTION_CAP):
        mid = 0.5 * (lo + hi)
        value = phi_profile(mid, inputs)
        if abs(value) <= tolerance or mid in (lo, hi):
            logger.debug(f"solve_rho settled after {iteration + 1} steps at {mid!r}")
            return mid
        if value > 0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"solve_rho hit the iteration cap of {BISECTION_CAP}", BISECTION_CAP)


def univalent_range(inputs: LandauInputs, rho0: float) -> Tuple[float, float]:
    """(rho0, lower bound of the covering radius R0); a negative bracket is clamped to 0"""
    inputs.require_solution_range()
    M = inputs.bound
    bracket = inputs.scale / (M * (2 + inputs.alpha)) - M * rho0 * (2 - rho0) / (math.pi * (1 - rho0) ** 2)
    if bracket < 0:
        logger.warning(f"⚠️ covering bracket {bracket!r} is negative at rho0={rho0!r}; clamping R0 to 0")
        bracket = 0.0
    return rho0, 2 * rho0 / 3 * bracket


def mu(gamma, alpha: float, p: float):
    """(1+gamma)^((alpha+1)/p) / (gamma (1-gamma)^(1/p))"""
    g = np.asarray(gamma, dtype=float)
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    values = (1 + g) ** ((alpha + 1) * inv_p) / (g * (1 - g) ** inv_p)
    return float(values) if np.ndim(gamma) == 0 else values


def _log_mu(gamma: float, alpha: float, p: float) -> float:
    return (alpha + 1) / p * math.log1p(gamma) - math.log(gamma) - math.log1p(-gamma) / p


def _log_mu_slope(gamma: float, alpha: float, p: float) -> float:
    return (alpha + 1) / (p * (1 + gamma)) - 1 / gamma + 1 / (p * (1 - gamma))


def _golden_section(func, lower: float, upper: float) -> float:
    x1 = upper - PHI_RATIO * (upper - lower)
    x2 = lower + PHI_RATIO * (upper - lower)
    f1, f2 = func(x1), func(x2)
    for _ in range(GOLDEN_CAP):
        if upper - lower <= GOLDEN_TOLERANCE:
            break
        if f2 > f1:
            upper, x2, f2 = x2, x1, f1
            x1 = upper - PHI_RATIO * (upper - lower)
            f1 = func(x1)
        else:
            lower, x1, f1 = x1, x2, f2
            x2 = lower + PHI_RATIO * (upper - lower)
            f2 = func(x2)
    return 0.5 * (lower + upper)


def _bisect_slope(alpha: float, p: float, lower: float, upper: float) -> float:
    for _ in range(BISECTION_CAP):
        mid = 0.5 * (lower + upper)
        if mid in (lower, upper):
            return mid
        if _log_mu_slope(mid, alpha, p) > 0:
            upper = mid
        else:
            lower = mid
    return 0.5 * (lower + upper)


def _count_local_minima(values: np.ndarray) -> int:
    inner = values[1:-1]
    return int(np.sum((inner < values[:-2]) & (inner < values[2:])))


def minimize_mu(alpha: float, p: float) -> Tuple[float, float]:
    """
    Minimise mu over (0, 1)

    Args:
        alpha: Exponent in (-1, 0]
        p: Hardy exponent, p >= 1 (inf allowed)

    Returns:
        (gamma0, mu(gamma0))
    """
    if not (-1 < alpha <= 0):
        raise DomainError(f"mu minimisation needs alpha in (-1, 0], got {alpha}", "alpha")
    if not (p >= 1):
        raise DomainError(f"mu minimisation needs p >= 1, got {p}", "p")
    if math.isinf(p):
        logger.warning("⚠️ p = inf: mu(gamma) = 1/gamma has no interior minimum, using the bracket end")
        return GAMMA_UPPER, mu(GAMMA_UPPER, alpha, p)

    grid = np.linspace(GAMMA_LOWER, GAMMA_UPPER, PRESCAN_POINTS)
    log_values = np.array([_log_mu(g, alpha, p) for g in grid])
    minima = _count_local_minima(log_values)
    if minima > 1:
        raise ConvergenceError(f"mu has {minima} local minima on the pre-scan grid for alpha={alpha}, p={p}")

    coarse = _golden_section(lambda g: _log_mu(g, alpha, p), GAMMA_LOWER, GAMMA_UPPER)
    lower = max(GAMMA_LOWER, coarse - POLISH_WINDOW)
    upper = min(GAMMA_UPPER, coarse + POLISH_WINDOW)
    if _log_mu_slope(lower, alpha, p) > 0 or _log_mu_slope(upper, alpha, p) < 0:
        lower, upper = GAMMA_LOWER, GAMMA_UPPER
    gamma0 = _bisect_slope(alpha, p, lower, upper)
    if gamma0 - GAMMA_LOWER < POLISH_WINDOW or GAMMA_UPPER - gamma0 < POLISH_WINDOW:
        logger.warning(f"⚠️ mu minimum at {gamma0!r} sits on the search bracket edge")
    return gamma0, mu(gamma0, alpha, p)


def landau_hardy(alpha: float, p: float, hardy_norm: float, lam: float) -> LandauResult:
    """
    Univalence and covering radii for a Hardy-space solution with f(0) = 0, |J_f(0)| = lam

    Returns:
        LandauResult with radii gamma0 * rho0 and gamma0 * R0
    """
    if not (-1 < alpha <= 0):
        raise DomainError(f"univalence radii need alpha in (-1, 0], got {alpha}", "alpha")
    if not (hardy_norm > 0):
        raise DomainError(f"Hardy norm must be positive, got {hardy_norm}", "hardy_norm")
    gamma0, mu_min = minimize_mu(alpha, p)
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    mstar = c_alpha(alpha) ** inv_p * hardy_norm * mu_min
    inputs = LandauInputs(alpha=alpha, scale=lam, bound=mstar, p=p, hardy_norm=hardy_norm)
    rho0 = solve_rho(inputs)
    _, r0 = univalent_range(inputs, rho0)
    logger.info(f"✅ landau_hardy alpha={alpha} p={p}: gamma0={gamma0:.6f} rho0={rho0:.6f}")
    return LandauResult(
        gamma0=gamma0,
        mstar=mstar,
        rho0=rho0,
        r0_lower=r0,
        univalence_radius=gamma0 * rho0,
        covering_radius=gamma0 * r0,
    )


def landau_bounded_radii(alpha: float, beta: float, M: float) -> LandauResult:
    """Univalence and covering radii for a bounded solution, no dilation"""
    inputs = LandauInputs(alpha=alpha, scale=beta, bound=M)
    inputs.require_solution_range()
    rho0 = solve_rho(inputs)
    _, r0 = univalent_range(inputs, rho0)
    return LandauResult(gamma0=1.0, mstar=M, rho0=rho0, r0_lower=r0, univalence_radius=rho0, covering_radius=r0)


def landau_bounded(
    sol: SeriesSolution, radial: int = 64, angular: int = 128, trace_samples: int = 8192
) -> LandauResult:
    """Measure beta = |J_f(0)| and M = max(grid sup, trace bound), then compute the radii"""
    M = max(sup_estimate(sol, radial, angular), trace_sup_bound(sol, trace_samples))
    origin = evaluate(sol, 0j)
    if abs(origin) > ORIGIN_TOLERANCE * max(1.0, M):
        raise DomainError(f"univalence radii need f(0) = 0, got {origin}", "solution")
    beta = abs(wirtinger_derivatives(sol, 0j).jacobian)
    if not (beta > 0):
        raise DomainError("univalence radii need a nonzero Jacobian at the origin", "solution")
    logger.debug(f"landau_bounded measured beta={beta!r} M={M!r}")
    return landau_bounded_radii(sol.alpha, beta, M)


def classical_landau_radius(M: float) -> Tuple[float, float]:
    """Analytic-function reference: rho = 1/(M + sqrt(M^2 - 1)) and covering radius M rho^2"""
    if not (M >= 1):
        raise DomainError(f"classical Landau radius needs M >= 1, got {M}", "M")
    rho = 1.0 / (M + math.sqrt(M * M - 1))
    return rho, M * rho * rho


def _disk_grid(radius: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    radii = radius * np.arange(1, n + 1) / n
    angles = 2.0 * np.pi * np.arange(n) / n
    return radii, angles


def grid_injectivity(sol: SeriesSolution, radius: float, n: int = 40) -> float:
    """Minimum pairwise distance between images of an n x n polar grid of D_radius plus the centre"""
    if not (0 < radius < 1):
        raise DomainError(f"grid radius must lie in (0, 1), got {radius}", "radius")
    radii, angles = _disk_grid(radius, n)
    images = np.concatenate(([evaluate(sol, 0j)], evaluate_polar(sol, radii, angles).reshape(-1)))
    distances = np.abs(images[:, None] - images[None, :])
    np.fill_diagonal(distances, np.inf)
    return float(distances.min())


def boundary_image_distance(sol: SeriesSolution, radius: float, n: int = 256) -> float:
    """min |f(zeta) - f(0)| over |zeta| = radius"""
    if not (0 < radius < 1):
        raise DomainError(f"circle radius must lie in (0, 1), got {radius}", "radius")
    angles = 2.0 * np.pi * np.arange(n) / n
    ring = evaluate_polar(sol, np.array([radius]), angles)[0]
    return float(np.min(np.abs(ring - evaluate(sol, 0j))))


def landau_sweep(
    alphas: Iterable[float], ps: Iterable[float], hardy_norm: float, lam: float
) -> List[Tuple[float, float, LandauResult]]:
    """landau_hardy over an (alpha, p) grid"""
    rows = []
    for alpha in alphas:
        for p in ps:
            rows.append((alpha, p, landau_hardy(alpha, p, hardy_norm, lam)))
    return rows
