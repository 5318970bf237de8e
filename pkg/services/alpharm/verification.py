"""
Verification Suite
Runs every checkable inequality and numerical identity against one series solution
and returns the list of BoundReports (the verify command's output)
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from loguru import logger

from .bounds import (
    BoundReport,
    PointSample,
    center_deviation_reports,
    coefficient_bounds,
    colonna_gradient_checks,
    gradient_reports,
    growth_reports,
    heinz_value_checks,
    increment_reports,
    parseval_energy_bound,
    series_term_bound,
)
from .config import AlphaHarmonicSettings, get_settings
from .solution import (
    SeriesSolution,
    boundary_trace,
    hardy_mean,
    hardy_norm,
    parseval_sum,
    pde_residual,
    sup_estimate,
    trace_sup_bound,
)

SAMPLE_RADIUS = 0.95
RESIDUAL_RADIUS = 0.5
RESIDUAL_POINTS = 20
PARSEVAL_RADII = (0.3, 0.7, 0.95)
PARSEVAL_TOLERANCE = 1e-9
JACOBIAN_TOLERANCE = 1e-12
ORIGIN_TOLERANCE = 1e-12
GROWTH_EXPONENT = 2.0
SERIES_TERMS = 4


@dataclass
class VerificationContext:
    """Measured constants shared by the checks"""
    bound: float
    sup_grid: float
    sup_trace: float
    tolerance: float


def random_points(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    """Points uniformly distributed in the disk of the given radius"""
    r = radius * np.sqrt(rng.random(count))
    theta = 2.0 * np.pi * rng.random(count)
    return r * np.exp(1j * theta)


def _label(name: str, z: complex) -> str:
    z = complex(z)
    return f"{name}@{z.real!r}{z.imag:+}j"


def measure_bound(sol: SeriesSolution, settings: AlphaHarmonicSettings, bound: Optional[float] = None) -> VerificationContext:
    """M = max(user bound, grid sup, trace bound); falls back to 1 for the zero solution"""
    sup_grid = sup_estimate(sol, settings.grid_radial, settings.grid_angular)
    sup_trace = trace_sup_bound(sol, max(settings.trace_samples, 2 * sol.order + 2))
    M = max(bound or 0.0, sup_grid, sup_trace) or 1.0
    return VerificationContext(bound=M, sup_grid=sup_grid, sup_trace=sup_trace, tolerance=settings.bound_tolerance * M)


def verify_solution(
    sol: SeriesSolution,
    bound: Optional[float] = None,
    settings: Optional[AlphaHarmonicSettings] = None,
) -> List[BoundReport]:
    """
    Run the full check suite

    Args:
        sol: Solution under test
        bound: Optional caller-supplied M; the measured sup is used when larger
        settings: Numeric knobs (seed, grids, tolerances); defaults to get_settings()

    Returns:
        Reports in a fixed order; deterministic for a given seed
    """
    settings = settings or get_settings()
    rng = np.random.default_rng(settings.seed)
    ctx = measure_bound(sol, settings, bound)
    M, tol = ctx.bound, ctx.tolerance
    alpha = sol.alpha
    logger.info(f"🔍 verifying alpha={alpha} order={sol.order} with M={M!r}")

    reports: List[BoundReport] = []

    residual_limit = settings.residual_tolerance * max(1.0, M)
    for z in random_points(rng, RESIDUAL_POINTS, RESIDUAL_RADIUS):
        residual = abs(pde_residual(sol, alpha, complex(z), settings.residual_step))
        reports.append(BoundReport.from_sides(_label("pde_residual", z), residual, residual_limit, 0.0))

    sample = PointSample.measure(sol, random_points(rng, settings.verify_points, SAMPLE_RADIUS))
    reports.extend(center_deviation_reports(sol, M, sample, tol))
    reports.extend(gradient_reports(sol, M, sample, tol))

    for k in range(1, sol.order + 1):
        weighted, constant, plain = coefficient_bounds(sol, M, k, tol)
        if k == 1:
            reports.append(constant)
        reports.extend([weighted, plain])
    reports.append(parseval_energy_bound(sol, M, tol * M))

    angles = max(settings.hardy_angles, 4 * sol.order + 2)
    for r in PARSEVAL_RADII:
        quadrature = hardy_mean(sol, 2.0, r, angles) ** 2
        deviation = abs(quadrature - parseval_sum(sol, r))
        reports.append(
            BoundReport.from_sides(f"parseval[r={r}]", deviation, PARSEVAL_TOLERANCE * max(1.0, M * M), 0.0)
        )

    c0_vanishes = abs(sol.coeff(0)) <= ORIGIN_TOLERANCE * M
    if -1 < alpha <= 0:
        for k in range(1, sol.order + 1):
            reports.extend(series_term_bound(sol, M, k, n, tol) for n in range(SERIES_TERMS))
        if c0_vanishes:
            reports.extend(increment_reports(sol, M, sample, tol))

    if alpha == 0:
        if c0_vanishes:
            reports.extend(heinz_value_checks(sol, M, sample, tol))
        reports.extend(colonna_gradient_checks(sol, M, sample, tol))

    for z, a, b in zip(sample.points, sample.fz, sample.fzbar):
        jac = abs(a) ** 2 - abs(b) ** 2
        product = (abs(a) + abs(b)) * abs(abs(a) - abs(b))
        limit = JACOBIAN_TOLERANCE * max(1.0, (abs(a) + abs(b)) ** 2)
        reports.append(BoundReport.from_sides(_label("jacobian_identity", z), abs(abs(jac) - product), limit, 0.0))

    trace = boundary_trace(sol, max(settings.trace_samples, 2 * sol.order + 2))
    norm_p = max(hardy_norm(sol, GROWTH_EXPONENT, angles), hardy_mean(trace, GROWTH_EXPONENT))
    reports.extend(growth_reports(sol, GROWTH_EXPONENT, norm_p, sample, tight=True, tolerance=tol))

    failed = sum(1 for report in reports if not report.satisfied)
    if failed:
        logger.warning(f"⚠️ {failed} of {len(reports)} checks violated")
    else:
        logger.info(f"✅ all {len(reports)} checks satisfied")
    return reports
