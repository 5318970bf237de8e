"""
Solution Representations
- Truncated two-sided series sum c_k F(-a/2, |k|-a/2; |k|+1; |z|^2) z^k (zbar^|k| for k < 0)
- Boundary samples, DFT inversion and the Poisson-type integral
- Wirtinger derivatives, finite-difference operator residual
- Sup, Hardy-mean and Parseval estimates
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
from loguru import logger

from .exceptions import AliasingError, DomainError
from .kernel import AlphaParameter, DiskPoint, PointLike, as_disk_point, kernel_value
from .special import HypParams, hyp2f1, hyp2f1_dx

ROOT_TEST_LIMIT = 1.5
MIN_SAMPLES = 16
DIVISION_GUARD = 1e-14
POISSON_CONDITIONING = 0.99
SUP_INNER_GAP = 1e-4
HARDY_GRID_DEPTH = 12
RESIDUAL_STEP_RANGE = (1e-5, 1e-2)


def radial_params(alpha: float, k: int) -> HypParams:
    """Parameters of the radial profile for mode k"""
    m = abs(k)
    return HypParams(-alpha / 2, m - alpha / 2, m + 1.0)


@dataclass(frozen=True, eq=False)
class SeriesSolution:
    """Truncated series solution; absent keys mean c_k = 0"""
    alpha: float
    order: int
    coeffs: Dict[int, complex] = field(default_factory=dict)

    def __post_init__(self):
        AlphaParameter(self.alpha)
        if self.order < 1:
            raise DomainError(f"truncation order must be positive, got {self.order}", "order")
        cleaned = {int(k): complex(c) for k, c in self.coeffs.items() if c != 0}
        for k, c in cleaned.items():
            if abs(k) > self.order:
                raise DomainError(f"coefficient index {k} exceeds order {self.order}", "coeffs")
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise DomainError(f"coefficient c_{k} is not finite", "coeffs")
        edge = [abs(c) for k, c in cleaned.items() if abs(k) == self.order]
        if edge and max(edge) ** (1.0 / self.order) > ROOT_TEST_LIMIT:
            raise DomainError(f"coefficients at |k| = {self.order} fail the root test", "coeffs")
        object.__setattr__(self, "coeffs", cleaned)

    def coeff(self, k: int) -> complex:
        return self.coeffs.get(k, 0j)

    @property
    def modes(self):
        """Distinct |k| that carry a nonzero coefficient"""
        return sorted({abs(k) for k in self.coeffs})

    def profiles(self, w: np.ndarray) -> Dict[int, np.ndarray]:
        return {m: np.asarray(hyp2f1(radial_params(self.alpha, m), w)) for m in self.modes}

    def profile_derivatives(self, w: np.ndarray) -> Dict[int, np.ndarray]:
        return {m: np.asarray(hyp2f1_dx(radial_params(self.alpha, m), w)) for m in self.modes}

    def boundary_coefficients(self) -> Dict[int, complex]:
        """Fourier coefficients c_k F(...; 1) of the boundary trace"""
        at_one = {m: hyp2f1(radial_params(self.alpha, m), 1.0) for m in self.modes}
        return {k: c * at_one[abs(k)] for k, c in self.coeffs.items()}


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """Uniform samples f*(e^{2 pi i j / N}), j = 0..N-1"""
    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=complex).reshape(-1)
        if arr.size < MIN_SAMPLES:
            raise DomainError(f"boundary data needs at least {MIN_SAMPLES} samples, got {arr.size}", "samples")
        if not np.all(np.isfinite(arr)):
            raise DomainError("boundary samples must be finite", "samples")
        object.__setattr__(self, "samples", arr)

    @property
    def n(self) -> int:
        return int(self.samples.size)

    @property
    def thetas(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.n) / self.n

    @classmethod
    def from_function(cls, func: Callable[[np.ndarray], np.ndarray], n: int) -> "BoundaryData":
        thetas = 2.0 * np.pi * np.arange(n) / n
        return cls(np.asarray(func(thetas), dtype=complex))

    def resample(self, n: int) -> np.ndarray:
        """Values of the trigonometric interpolant at n uniform nodes"""
        size = self.n
        spectrum = np.fft.fft(self.samples) / size
        freqs = np.fft.fftfreq(size, d=1.0 / size).astype(int)
        if size % 2 == 0:
            # split the Nyquist mode between +N/2 and -N/2
            half = spectrum[size // 2] / 2
            spectrum = np.append(spectrum, half)
            spectrum[size // 2] = half
            freqs = np.append(freqs, size // 2)
        folded = np.zeros(n, dtype=complex)
        np.add.at(folded, freqs % n, spectrum)
        return np.fft.ifft(folded) * n


@dataclass(frozen=True)
class WirtingerPair:
    """f_z and f_zbar at one point"""
    fz: complex
    fzbar: complex

    @property
    def norm(self) -> float:
        """||D_f|| = |f_z| + |f_zbar|"""
        return abs(self.fz) + abs(self.fzbar)

    @property
    def min_stretch(self) -> float:
        """l(D_f) = ||f_z| - |f_zbar||"""
        return abs(abs(self.fz) - abs(self.fzbar))

    @property
    def jacobian(self) -> float:
        return abs(self.fz) ** 2 - abs(self.fzbar) ** 2


def from_boundary(alpha: float, data: BoundaryData, order: int) -> SeriesSolution:
    """
    Build the series solution whose boundary trace matches the low-pass content of data

    Args:
        alpha: Exponent, alpha > -1
        data: Uniform boundary samples
        order: Truncation order K; needs N >= 4K + 1 samples

    Returns:
        SeriesSolution with c_k = fhat(k) / F(-a/2, |k|-a/2; |k|+1; 1)
    """
    AlphaParameter(alpha)
    if data.n < 4 * order + 1:
        raise AliasingError(f"{data.n} samples cannot resolve order {order} (need {4 * order + 1})", "samples")
    spectrum = np.fft.fft(data.samples) / data.n
    coeffs = {}
    for k in range(-order, order + 1):
        at_one = hyp2f1(radial_params(alpha, k), 1.0)
        if abs(at_one) < DIVISION_GUARD:
            raise DomainError(f"radial profile of mode {k} vanishes at the boundary", "alpha")
        coeffs[k] = complex(spectrum[k % data.n]) / at_one
    return SeriesSolution(alpha=alpha, order=order, coeffs=coeffs)


def evaluate_points(sol: SeriesSolution, z: np.ndarray) -> np.ndarray:
    """Vectorised series evaluation at interior points"""
    pts = np.asarray(z, dtype=complex)
    if np.any(np.abs(pts) >= 1):
        raise DomainError("evaluation points must lie inside the unit disk", "z")
    w = np.abs(pts) ** 2
    profiles = sol.profiles(w)
    total = np.zeros_like(pts)
    for k, c in sol.coeffs.items():
        power = pts ** k if k >= 0 else np.conj(pts) ** (-k)
        total = total + c * profiles[abs(k)] * power
    return total


def evaluate(sol: SeriesSolution, z: PointLike) -> complex:
    """f(z) from the truncated series"""
    point = as_disk_point(z)
    return complex(evaluate_points(sol, np.array([point.z]))[0])


def evaluate_polar(sol: SeriesSolution, radii: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """f(r e^{i theta}) on a polar grid, shape (len(radii), len(angles))"""
    r = np.asarray(radii, dtype=float)
    theta = np.asarray(angles, dtype=float)
    if np.any(r < 0) or np.any(r >= 1):
        raise DomainError("grid radii must lie in [0, 1)", "radii")
    profiles = sol.profiles(r ** 2)
    grid = np.zeros((r.size, theta.size), dtype=complex)
    for k, c in sol.coeffs.items():
        m = abs(k)
        grid += c * (profiles[m] * r ** m)[:, None] * np.exp(1j * k * theta)[None, :]
    return grid


def wirtinger_arrays(sol: SeriesSolution, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised f_z and f_zbar at interior points"""
    zz = np.asarray(z, dtype=complex)
    if np.any(np.abs(zz) >= 1):
        raise DomainError("evaluation points must lie inside the unit disk", "z")
    zb = np.conj(zz)
    w = np.abs(zz) ** 2
    profiles = sol.profiles(w)
    slopes = sol.profile_derivatives(w)
    fz = np.zeros_like(zz)
    fzbar = np.zeros_like(zz)
    for k, c in sol.coeffs.items():
        m = abs(k)
        f_val = profiles[m]
        d_val = slopes[m]
        if k >= 0:
            lead = m * f_val * zz ** (m - 1) if m > 0 else 0
            fz = fz + c * (lead + d_val * zb * zz ** m)
            fzbar = fzbar + c * d_val * zz ** (m + 1)
        else:
            lead = m * f_val * zb ** (m - 1)
            fz = fz + c * d_val * zb ** (m + 1)
            fzbar = fzbar + c * (lead + d_val * zz * zb ** m)
    return fz, fzbar


def wirtinger_derivatives(sol: SeriesSolution, z: PointLike) -> WirtingerPair:
    """Term-wise f_z and f_zbar of the truncated series, k = 0 terms included"""
    fz, fzbar = wirtinger_arrays(sol, np.array([as_disk_point(z).z]))
    return WirtingerPair(fz=complex(fz[0]), fzbar=complex(fzbar[0]))


def poisson_integral(alpha: float, data: BoundaryData, z: PointLike, n: int = 1024) -> complex:
    """
    (1/2pi) int K_alpha(z e^{-i tau}) f*(e^{i tau}) d tau by the n-point trapezoid rule,
    with the samples interpolated trigonometrically to the nodes
    """
    point = as_disk_point(z)
    if point.r > POISSON_CONDITIONING:
        logger.warning(f"⚠️ poisson_integral at |z| = {point.r:.6f}: quadrature is poorly conditioned")
    values = data.resample(n) if n != data.n else data.samples
    nodes = 2.0 * np.pi * np.arange(n) / n
    weights = kernel_value(alpha, point, nodes)
    return complex(np.mean(weights * values))


Target = Union[SeriesSolution, Callable[[np.ndarray], np.ndarray]]


def pde_residual(target: Target, alpha: float, z: PointLike, h: float = 1e-3) -> complex:
    """
    Apply the operator T_alpha to a solution or callable by centred differences

    Args:
        target: SeriesSolution or vectorised callable of complex points
        alpha: Exponent of the operator
        z: Interior point
        h: Step, 1e-5 <= h <= 1e-2

    Returns:
        Finite-difference value of T_alpha f at z
    """
    low, high = RESIDUAL_STEP_RANGE
    if not (low <= h <= high):
        raise DomainError(f"residual step must lie in [{low}, {high}], got {h}", "h")
    zz = complex(z.z if isinstance(z, DiskPoint) else z)
    if abs(zz) + 2 * h >= 1:
        raise DomainError(f"stencil around {zz} with step {h} leaves the disk", "z")

    stencil = np.array([zz, zz + h, zz - h, zz + 1j * h, zz - 1j * h])
    if isinstance(target, SeriesSolution):
        values = evaluate_points(target, stencil)
    else:
        values = np.asarray(target(stencil), dtype=complex)
    f0, fe, fw, fn, fs = values

    fx = (fe - fw) / (2 * h)
    fy = (fn - fs) / (2 * h)
    f_z = (fx - 1j * fy) / 2
    f_zbar = (fx + 1j * fy) / 2
    laplacian = (fe + fw + fn + fs - 4 * f0) / (h * h)

    w = abs(zz) ** 2
    lower = (1 - w) ** (-alpha - 1)
    radial = (alpha / 2) * (zz * f_z + zz.conjugate() * f_zbar)
    return complex(lower * (-(alpha ** 2) / 4 * f0 + radial) + 0.25 * (1 - w) ** (-alpha) * laplacian)


def sup_estimate(sol: SeriesSolution, radial: int = 64, angular: int = 128) -> float:
    """Max |f| over a polar grid with radii up to 1 - 1e-4; a lower bound for sup |f|"""
    if radial < 16 or angular < 16:
        raise DomainError("sup_estimate grid counts must be at least 16", "grid")
    radii = 1.0 - np.geomspace(1.0, SUP_INNER_GAP, radial)
    angles = 2.0 * np.pi * np.arange(angular) / angular
    return float(np.max(np.abs(evaluate_polar(sol, radii, angles))))


def boundary_trace(sol: SeriesSolution, n: int = 8192) -> BoundaryData:
    """Samples of the boundary limit sum c_k F(...; 1) e^{ik theta}"""
    if n < 2 * sol.order + 1:
        raise AliasingError(f"{n} trace samples cannot hold order {sol.order}", "n")
    spectrum = np.zeros(n, dtype=complex)
    for k, value in sol.boundary_coefficients().items():
        spectrum[k % n] += value
    return BoundaryData(np.fft.ifft(spectrum) * n)


def trace_sup_bound(sol: SeriesSolution, n: int = 8192) -> float:
    """Upper bound for sup |f*|: discrete trace maximum over cos(pi K / n)"""
    if n <= 2 * sol.order:
        raise AliasingError(f"{n} trace samples cannot bound order {sol.order}", "n")
    trace = boundary_trace(sol, n)
    return float(np.max(np.abs(trace.samples)) / math.cos(math.pi * sol.order / n))


def _lp_mean(values: np.ndarray, p: float) -> float:
    moduli = np.abs(values)
    if math.isinf(p):
        return float(np.max(moduli))
    return float(np.mean(moduli ** p) ** (1.0 / p))


def _check_exponent(p: float) -> None:
    if not (p >= 1):
        raise DomainError(f"Hardy exponent must be >= 1, got {p}", "p")


def hardy_mean(target: Union[SeriesSolution, BoundaryData], p: float, r: float = 0.5, angles: int = 512) -> float:
    """M_p(r, f); boundary samples give the boundary mean and ignore r"""
    _check_exponent(p)
    if isinstance(target, BoundaryData):
        return _lp_mean(target.samples, p)
    if not (0 <= r < 1):
        raise DomainError(f"radius must lie in [0, 1), got {r}", "r")
    thetas = 2.0 * np.pi * np.arange(angles) / angles
    return _lp_mean(evaluate_polar(target, np.array([r]), thetas)[0], p)


def hardy_norm(target: Union[SeriesSolution, BoundaryData], p: float, angles: int = 512) -> float:
    """Estimate of ||f||_p as the max of M_p over r in {0} and {1 - 2^-j, j = 1..12}"""
    _check_exponent(p)
    if isinstance(target, BoundaryData):
        return _lp_mean(target.samples, p)
    radii = np.concatenate(([0.0], 1.0 - 2.0 ** -np.arange(1, HARDY_GRID_DEPTH + 1)))
    thetas = 2.0 * np.pi * np.arange(angles) / angles
    grid = evaluate_polar(target, radii, thetas)
    return max(_lp_mean(row, p) for row in grid)


def parseval_sum(sol: SeriesSolution, r: float) -> float:
    """sum |c_k F(...; r^2)|^2 r^{2|k|}; equals M_2(r, f)^2"""
    if not (0 <= r <= 1):
        raise DomainError(f"radius must lie in [0, 1], got {r}", "r")
    total = 0.0
    for k, c in sol.coeffs.items():
        m = abs(k)
        profile = hyp2f1(radial_params(sol.alpha, m), r * r)
        total += abs(c * profile) ** 2 * r ** (2 * m)
    return total


def truncate_order(order: Optional[int], data: BoundaryData) -> int:
    """Largest order the samples resolve, capped at the requested one"""
    limit = (data.n - 1) // 4
    return limit if order is None else min(order, limit)
