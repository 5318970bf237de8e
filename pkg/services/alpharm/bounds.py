"""
Inequality Checks
- Schwarz-Pick type bounds on |f| and ||D_f|| for bounded solutions
- Boundary stretch constants, coefficient and increment bounds, Hardy growth bound
- Harmonic (alpha = 0) reference bounds and their extremal functions
Every check is reported as a BoundReport (lhs <= rhs with slack)
"""

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from .exceptions import DomainError
from .kernel import AlphaParameter, PointLike, as_disk_point, kernel_mean
from .solution import (
    SeriesSolution,
    WirtingerPair,
    evaluate,
    evaluate_points,
    parseval_sum,
    radial_params,
    wirtinger_arrays,
    wirtinger_derivatives,
)
from .special import c_alpha, hyp2f1, log_gamma, pochhammer

DEFAULT_TOLERANCE = 1e-9
FOUR_OVER_PI = 4.0 / math.pi


class BoundReport(BaseModel):
    """Evaluated sides of one inequality lhs <= rhs"""
    label: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool

    @classmethod
    def from_sides(cls, label: str, lhs: float, rhs: float, tolerance: float = DEFAULT_TOLERANCE) -> "BoundReport":
        slack = float(rhs) - float(lhs)
        return cls(label=label, lhs=float(lhs), rhs=float(rhs), slack=slack, satisfied=bool(slack >= -tolerance))


def _check_bound(M: float) -> None:
    if not (M > 0):
        raise DomainError(f"bound M must be positive, got {M}", "M")


def _check_unit_radius(r: float) -> None:
    if not (0 <= r < 1):
        raise DomainError(f"radius must lie in [0, 1), got {r}", "r")


def _point_label(z: complex) -> str:
    z = complex(z)
    return f"{z.real!r}{z.imag:+}j"


def center_deviation_bound(alpha: float, M: float, z: PointLike) -> float:
    """M [M_alpha(|z|) - c_alpha (1 - |z|)^(alpha+1) / (1 + |z|)]"""
    AlphaParameter(alpha)
    _check_bound(M)
    r = as_disk_point(z).r
    shifted_center = (1 - r) ** (alpha + 1) / (1 + r) * c_alpha(alpha)
    return M * (kernel_mean(alpha, r) - shifted_center)


def gradient_bound(alpha: float, M: float, r: float, tight: bool = True) -> float:
    """
    Bound on ||D_f(z)|| at |z| = r for sup |f| <= M

    tight=True keeps the M_alpha(r) factor; tight=False is the cruder form without it.
    """
    AlphaParameter(alpha)
    _check_bound(M)
    _check_unit_radius(r)
    value = M * (2 + alpha + (4 + 3 * alpha) * r) / (1 - r * r)
    return value * kernel_mean(alpha, r) if tight else value


def heinz_boundary_bound(alpha: float) -> float:
    """Lower bound for the boundary stretch: 2/pi for alpha = 0, alpha/2 for alpha > 0"""
    if alpha < 0:
        raise DomainError(f"boundary stretch bound needs alpha >= 0, got {alpha}", "alpha")
    if alpha == 0:
        return 2.0 / math.pi
    return alpha / 2


def coefficient_pair_rhs(alpha: float, M: float, k: int) -> float:
    """4M Gamma(1+a/2) Gamma(k+1+a/2) / (k! Gamma(a+1) pi), evaluated in log space"""
    log_ratio = log_gamma(1 + alpha / 2) + log_gamma(k + 1 + alpha / 2) - log_gamma(k + 1.0) - log_gamma(alpha + 1)
    return FOUR_OVER_PI * M * math.exp(log_ratio)


def coefficient_bounds(
    sol: SeriesSolution, M: float, k: int, tolerance: float = DEFAULT_TOLERANCE
) -> Tuple[BoundReport, BoundReport, BoundReport]:
    """
    Coefficient estimates for a solution with sup |f| <= M

    Returns:
        (weighted pair bound 4M/pi, constant-term bound M, plain pair bound via Gamma ratios)
    """
    _check_bound(M)
    if k < 1:
        raise DomainError(f"coefficient index must be positive, got {k}", "k")
    alpha = sol.alpha
    at_one = hyp2f1(radial_params(alpha, k), 1.0)
    at_one_zero = hyp2f1(radial_params(alpha, 0), 1.0)
    pair = abs(sol.coeff(k) * at_one) + abs(sol.coeff(-k) * at_one)
    weighted = BoundReport.from_sides(f"coefficient_pair[k={k}]", pair, FOUR_OVER_PI * M, tolerance)
    constant = BoundReport.from_sides("coefficient_zero", abs(sol.coeff(0) * at_one_zero), M, tolerance)
    plain = BoundReport.from_sides(
        f"coefficient_plain[k={k}]", abs(sol.coeff(k)) + abs(sol.coeff(-k)), coefficient_pair_rhs(alpha, M, k), tolerance
    )
    return weighted, constant, plain


def increment_bound(M: float, r: float) -> float:
    """Bound on |f_z(z) - f_z(0)| + |f_zbar(z) - f_zbar(0)| at |z| = r"""
    _check_bound(M)
    _check_unit_radius(r)
    first = FOUR_OVER_PI * M * r * (2 - r) / (1 - r) ** 2
    second = 2 * FOUR_OVER_PI * M * r * r / ((1 - r) * (1 - r * r) ** 2)
    return first + second


def growth_bound(alpha: float, p: float, hardy_norm: float, z: PointLike, tight: bool = False) -> float:
    """
    Pointwise growth of a Hardy-space solution

    c_alpha^(1/p) ||f||_p (1+|z|)^((alpha+1)/p) / (1-|z|)^(1/p); tight=True adds the
    factor M_alpha(|z|)^((p-1)/p). p = inf gives ||f||_inf (times M_alpha(|z|) when tight).
    """
    AlphaParameter(alpha)
    if not (p >= 1):
        raise DomainError(f"growth bound needs p >= 1, got {p}", "p")
    if hardy_norm < 0:
        raise DomainError("Hardy norm cannot be negative", "hardy_norm")
    r = as_disk_point(z).r
    inv_p = 0.0 if math.isinf(p) else 1.0 / p
    value = c_alpha(alpha) ** inv_p * hardy_norm * (1 + r) ** ((alpha + 1) * inv_p) / (1 - r) ** inv_p
    if tight:
        value *= kernel_mean(alpha, r) ** (1.0 - inv_p)
    return value


def parseval_energy_bound(sol: SeriesSolution, M: float, tolerance: float = DEFAULT_TOLERANCE) -> BoundReport:
    """Boundary energy sum |c_k F(...; 1)|^2 against M^2"""
    _check_bound(M)
    return BoundReport.from_sides("parseval_energy", parseval_sum(sol, 1.0), M * M, tolerance)


def series_term_bound(
    sol: SeriesSolution, M: float, k: int, n: int, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    """One hypergeometric term of the pair bound, valid where all terms are nonnegative (alpha <= 0)"""
    _check_bound(M)
    alpha = sol.alpha
    if not (-1 < alpha <= 0):
        raise DomainError(f"series term bound needs alpha in (-1, 0], got {alpha}", "alpha")
    weight = pochhammer(-alpha / 2, n) * pochhammer(k - alpha / 2, n) / (pochhammer(k + 1.0, n) * math.factorial(n))
    lhs = (abs(sol.coeff(k)) + abs(sol.coeff(-k))) * weight
    return BoundReport.from_sides(f"series_term[k={k},n={n}]", lhs, FOUR_OVER_PI * M, tolerance)


@dataclass(frozen=True)
class PointSample:
    """Values and Wirtinger derivatives of one solution at a batch of interior points"""
    points: np.ndarray
    values: np.ndarray
    fz: np.ndarray
    fzbar: np.ndarray

    @classmethod
    def measure(cls, sol: SeriesSolution, points) -> "PointSample":
        pts = np.atleast_1d(np.asarray(points, dtype=complex))
        fz, fzbar = wirtinger_arrays(sol, pts)
        return cls(points=pts, values=evaluate_points(sol, pts), fz=fz, fzbar=fzbar)

    @property
    def norms(self) -> np.ndarray:
        return np.abs(self.fz) + np.abs(self.fzbar)


def _single(sol: SeriesSolution, z: PointLike) -> PointSample:
    return PointSample.measure(sol, as_disk_point(z).z)


def center_deviation_reports(
    sol: SeriesSolution, M: float, sample: PointSample, tolerance: float = DEFAULT_TOLERANCE
) -> List[BoundReport]:
    """|f(z) - (1-|z|)^(alpha+1)/(1+|z|) f(0)| against center_deviation_bound"""
    f0 = evaluate(sol, 0j)
    reports = []
    for z, value in zip(sample.points, sample.values):
        r = abs(z)
        shifted = (1 - r) ** (sol.alpha + 1) / (1 + r) * f0
        rhs = center_deviation_bound(sol.alpha, M, complex(z))
        reports.append(BoundReport.from_sides(f"center_deviation@{_point_label(z)}", abs(value - shifted), rhs, tolerance))
    return reports


def center_deviation_report(
    sol: SeriesSolution, M: float, z: PointLike, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    return center_deviation_reports(sol, M, _single(sol, z), tolerance)[0]


def gradient_reports(
    sol: SeriesSolution, M: float, sample: PointSample, tolerance: float = DEFAULT_TOLERANCE
) -> List[BoundReport]:
    return [
        BoundReport.from_sides(f"gradient@{_point_label(z)}", norm, gradient_bound(sol.alpha, M, abs(z), tight=True), tolerance)
        for z, norm in zip(sample.points, sample.norms)
    ]


def gradient_report(
    sol: SeriesSolution, M: float, z: PointLike, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    return gradient_reports(sol, M, _single(sol, z), tolerance)[0]


def increment_reports(
    sol: SeriesSolution, M: float, sample: PointSample, tolerance: float = DEFAULT_TOLERANCE
) -> List[BoundReport]:
    """Measured derivative increments from the origin against increment_bound"""
    if not (-1 < sol.alpha <= 0):
        raise DomainError(f"increment bound needs alpha in (-1, 0], got {sol.alpha}", "alpha")
    origin = wirtinger_derivatives(sol, 0j)
    increments = np.abs(sample.fz - origin.fz) + np.abs(sample.fzbar - origin.fzbar)
    return [
        BoundReport.from_sides(f"increment@{_point_label(z)}", inc, increment_bound(M, abs(z)), tolerance)
        for z, inc in zip(sample.points, increments)
    ]


def increment_report(
    sol: SeriesSolution, M: float, z: PointLike, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    return increment_reports(sol, M, _single(sol, z), tolerance)[0]


def growth_reports(
    sol: SeriesSolution,
    p: float,
    norm: float,
    sample: PointSample,
    tight: bool = True,
    tolerance: float = DEFAULT_TOLERANCE,
) -> List[BoundReport]:
    name = f"growth{'_tight' if tight else ''}[p={p}]"
    return [
        BoundReport.from_sides(
            f"{name}@{_point_label(z)}", abs(value), growth_bound(sol.alpha, p, norm, complex(z), tight=tight), tolerance
        )
        for z, value in zip(sample.points, sample.values)
    ]


def growth_report(
    sol: SeriesSolution,
    p: float,
    norm: float,
    z: PointLike,
    tight: bool = True,
    tolerance: float = DEFAULT_TOLERANCE,
) -> BoundReport:
    return growth_reports(sol, p, norm, _single(sol, z), tight, tolerance)[0]


def _require_harmonic(sol: SeriesSolution) -> None:
    if sol.alpha != 0:
        raise DomainError("harmonic reference checks need alpha = 0", "alpha")


def heinz_value_checks(
    sol: SeriesSolution, M: float, sample: PointSample, tolerance: float = DEFAULT_TOLERANCE
) -> List[BoundReport]:
    """|f(z)| <= M (4/pi) arctan|z| for harmonic f with f(0) = 0"""
    _require_harmonic(sol)
    return [
        BoundReport.from_sides(
            f"heinz_arctan@{_point_label(z)}", abs(value), M * harmonic_reference("heinz_arctan", complex(z)), tolerance
        )
        for z, value in zip(sample.points, sample.values)
    ]


def heinz_value_check(
    sol: SeriesSolution, M: float, z: PointLike, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    return heinz_value_checks(sol, M, _single(sol, z), tolerance)[0]


def colonna_gradient_checks(
    sol: SeriesSolution, M: float, sample: PointSample, tolerance: float = DEFAULT_TOLERANCE
) -> List[BoundReport]:
    """||D_f(z)|| <= 4M / (pi (1 - |z|^2)) for harmonic f"""
    _require_harmonic(sol)
    return [
        BoundReport.from_sides(f"colonna@{_point_label(z)}", norm, M * harmonic_reference("colonna", complex(z)), tolerance)
        for z, norm in zip(sample.points, sample.norms)
    ]


def colonna_gradient_check(
    sol: SeriesSolution, M: float, z: PointLike, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    return colonna_gradient_checks(sol, M, _single(sol, z), tolerance)[0]


def _automorphism(a: complex, z: complex) -> Tuple[complex, complex]:
    """psi_a(z) = (z - a)/(1 - conj(a) z) and its derivative"""
    denom = 1 - a.conjugate() * z
    return (z - a) / denom, (1 - abs(a) ** 2) / denom ** 2


def _check_unimodular(value: complex, name: str) -> complex:
    value = complex(value)
    if abs(abs(value) - 1) > 1e-12:
        raise DomainError(f"{name} must have modulus 1, got {value}", name)
    return value


def colonna_extremal_gradient(a: PointLike, gamma: complex, z: PointLike) -> WirtingerPair:
    """Wirtinger derivatives of (2 gamma/pi) arg((1 + psi_a)/(1 - psi_a))"""
    centre = as_disk_point(a).z
    gamma = _check_unimodular(gamma, "gamma")
    psi, dpsi = _automorphism(centre, as_disk_point(z).z)
    dlog = 2 * dpsi / (1 - psi * psi)
    scale = 2 * gamma / math.pi
    return WirtingerPair(fz=scale * dlog / 2j, fzbar=-scale * dlog.conjugate() / 2j)


def harmonic_reference(
    kind: str,
    z: PointLike,
    a: PointLike = 0j,
    gamma: complex = 1,
    k: int = 1,
    M: float = 1.0,
    epsilon: complex = 1,
    vartheta: complex = 1,
):
    """
    Reference values for harmonic (alpha = 0) mappings

    Args:
        kind: "heinz_arctan", "colonna", "colonna_extremal" or "coeff_extremal"
        z: Interior point
        a, gamma: Automorphism centre and unimodular factor for colonna_extremal
        k, M, epsilon, vartheta: Parameters of coeff_extremal

    Returns:
        Bound value (float) or extremal function value (complex)
    """
    point = as_disk_point(z)
    if kind == "heinz_arctan":
        return FOUR_OVER_PI * math.atan(point.r)
    if kind == "colonna":
        return FOUR_OVER_PI / (1 - point.w)
    if kind == "colonna_extremal":
        psi, _ = _automorphism(as_disk_point(a).z, point.z)
        gamma = _check_unimodular(gamma, "gamma")
        return 2 * gamma / math.pi * cmath.phase((1 + psi) / (1 - psi))
    if kind == "coeff_extremal":
        if k < 1:
            raise DomainError(f"extremal index must be positive, got {k}", "k")
        epsilon = _check_unimodular(epsilon, "epsilon")
        vartheta = _check_unimodular(vartheta, "vartheta")
        u = vartheta * point.z ** k
        return 2 * epsilon * M / math.pi * cmath.log((1 + u) / (1 - u)).imag
    raise DomainError(f"unknown harmonic reference {kind!r}", "kind")


def coeff_extremal_solution(
    k: int, M: float, order: int, epsilon: complex = 1, vartheta: complex = 1
) -> SeriesSolution:
    """Truncation of (2 eps M/pi) Im log((1 + vartheta z^k)/(1 - vartheta z^k)) at |index| <= order"""
    _check_bound(M)
    if k < 1 or k > order:
        raise DomainError(f"extremal index must lie in [1, {order}], got {k}", "k")
    epsilon = _check_unimodular(epsilon, "epsilon")
    vartheta = _check_unimodular(vartheta, "vartheta")
    scale = 2 * epsilon * M / math.pi
    coeffs = {}
    for n in range(1, order // k + 1, 2):
        coeffs[k * n] = -1j * scale * vartheta ** n / n
        coeffs[-k * n] = 1j * scale * vartheta.conjugate() ** n / n
    return SeriesSolution(alpha=0.0, order=order, coeffs=coeffs)


def bound_curves(alpha: float, M: float, p: float, norm: float, radii: np.ndarray) -> list:
    """Rows of every bound curve over a radius grid (harmonic columns only for alpha = 0)"""
    rows = []
    for r in np.asarray(radii, dtype=float):
        harmonic: Optional[Tuple[float, float]] = None
        if alpha == 0:
            harmonic = (M * harmonic_reference("heinz_arctan", r), M * harmonic_reference("colonna", r))
        rows.append(
            {
                "r": float(r),
                "center_deviation": center_deviation_bound(alpha, M, r),
                "gradient_tight": gradient_bound(alpha, M, r, tight=True),
                "gradient_loose": gradient_bound(alpha, M, r, tight=False),
                "increment": increment_bound(M, r),
                "growth": growth_bound(alpha, p, norm, r),
                "growth_tight": growth_bound(alpha, p, norm, r, tight=True),
                "heinz_arctan": harmonic[0] if harmonic else None,
                "colonna": harmonic[1] if harmonic else None,
            }
        )
    return rows
