"""
Poisson-Type Kernel
- K_alpha on the unit disk and its Wirtinger gradients
- Circular mean M_alpha(r): hypergeometric closed form or periodic trapezoid rule
- Radial slope of M_alpha and its boundary limit
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from loguru import logger

from .exceptions import DomainError
from .special import ArrayLike, HypParams, c_alpha, hyp2f1

BOUNDARY_MARGIN = 1e-12
QUAD_MIN_NODES = 16
QUAD_MAX_NODES = 2 ** 16
QUAD_AGREEMENT = 1e-12


@dataclass(frozen=True)
class AlphaParameter:
    """Exponent alpha > -1 of the operator family"""
    value: float

    def __post_init__(self):
        if not (self.value > -1) or not math.isfinite(self.value):
            raise DomainError(f"alpha must be a finite number > -1, got {self.value}", "alpha")

    @property
    def c_alpha(self) -> float:
        return c_alpha(self.value)

    @property
    def polyharmonic_order(self) -> Optional[int]:
        """n when alpha = 2(n - 1) for an integer n >= 1, otherwise None"""
        n = self.value / 2 + 1
        if float(n).is_integer() and n >= 1:
            return int(n)
        return None


@dataclass(frozen=True)
class DiskPoint:
    """A point of the open unit disk"""
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        if not (abs(self.z) < 1 - BOUNDARY_MARGIN):
            raise DomainError(f"point {self.z} is not inside the unit disk", "z")

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "DiskPoint":
        return cls(complex(r * math.cos(theta), r * math.sin(theta)))

    @property
    def r(self) -> float:
        return abs(self.z)

    @property
    def theta(self) -> float:
        return math.atan2(self.z.imag, self.z.real)

    @property
    def w(self) -> float:
        return abs(self.z) ** 2


PointLike = Union[DiskPoint, complex, float]


def as_disk_point(z: PointLike) -> DiskPoint:
    return z if isinstance(z, DiskPoint) else DiskPoint(complex(z))


@dataclass(frozen=True)
class KernelGradient:
    """Wirtinger derivatives of the kernel in z"""
    dz: complex
    dzbar: complex


def _check_alpha(alpha: float) -> None:
    AlphaParameter(alpha)


def _check_radius(r: ArrayLike) -> np.ndarray:
    arr = np.asarray(r, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0) or np.any(arr >= 1):
        raise DomainError("radius must lie in [0, 1)", "r")
    return arr


def kernel_value(alpha: float, z: PointLike, t: ArrayLike) -> ArrayLike:
    """
    K_alpha(z e^{-it}) = c_alpha (1 - |z|^2)^(alpha+1) / |1 - z e^{-it}|^(alpha+2)

    Args:
        alpha: Exponent, alpha > -1
        z: Interior point
        t: Angle or array of angles in radians

    Returns:
        Kernel value(s), same shape as t
    """
    _check_alpha(alpha)
    point = as_disk_point(z)
    t_arr = np.asarray(t, dtype=float)
    distance = np.abs(1.0 - point.z * np.exp(-1j * t_arr))
    values = c_alpha(alpha) * (1.0 - point.w) ** (alpha + 1) / distance ** (alpha + 2)
    return float(values) if np.ndim(t) == 0 else values


def kernel_gradients(alpha: float, z: PointLike, t: float) -> KernelGradient:
    """Closed-form d/dz and d/dzbar of K_alpha(z e^{-it})"""
    _check_alpha(alpha)
    point = as_disk_point(z)
    zz = point.z
    w = point.w
    e_minus = complex(math.cos(t), -math.sin(t))
    e_plus = e_minus.conjugate()
    q = abs(1.0 - zz * e_minus) ** 2
    scale = c_alpha(alpha) * (1.0 - w) ** alpha / q ** ((4.0 + alpha) / 2)
    dz = scale * ((1 + alpha / 2) * e_minus * (1 - zz.conjugate() * e_plus) * (1 - w) - (alpha + 1) * zz.conjugate() * q)
    dzbar = scale * ((1 + alpha / 2) * e_plus * (1 - zz * e_minus) * (1 - w) - (alpha + 1) * zz * q)
    return KernelGradient(dz=complex(dz), dzbar=complex(dzbar))


def _trapezoid_mean(alpha: float, r: float, n: int) -> float:
    nodes = 2.0 * math.pi * np.arange(n) / n
    return float(np.mean(kernel_value(alpha, complex(r), nodes)))


def kernel_mean(
    alpha: float,
    r: ArrayLike,
    method: str = "closed",
    n: int = 256,
    adaptive: bool = True,
) -> ArrayLike:
    """
    Circular mean M_alpha(r) of the kernel

    Args:
        alpha: Exponent, alpha > -1
        r: Radius or array of radii in [0, 1)
        method: "closed" (hypergeometric form) or "quadrature"
        n: Trapezoid node count; with adaptive=True the starting count of the doubling
        adaptive: Double n until two successive rules agree to 1e-12

    Returns:
        Mean value(s), same shape as r
    """
    _check_alpha(alpha)
    radii = _check_radius(r)
    if method == "closed":
        values = c_alpha(alpha) * np.asarray(hyp2f1(HypParams(-alpha / 2, -alpha / 2, 1.0), radii ** 2))
    elif method == "quadrature":
        if n < QUAD_MIN_NODES:
            raise DomainError(f"quadrature needs at least {QUAD_MIN_NODES} nodes, got {n}", "n")
        values = np.array([_quadrature_mean(alpha, float(rr), n, adaptive) for rr in radii.reshape(-1)])
        values = values.reshape(radii.shape)
    else:
        raise DomainError(f"unknown kernel_mean method {method!r}", "method")
    return float(values) if np.ndim(r) == 0 else values


def _quadrature_mean(alpha: float, r: float, n: int, adaptive: bool) -> float:
    previous = _trapezoid_mean(alpha, r, n)
    if not adaptive:
        return previous
    nodes = n
    while nodes < QUAD_MAX_NODES:
        nodes *= 2
        current = _trapezoid_mean(alpha, r, nodes)
        if abs(current - previous) <= QUAD_AGREEMENT * max(1.0, abs(current)):
            logger.debug(f"kernel_mean quadrature settled at n={nodes} for r={r}")
            return current
        previous = current
    logger.warning(f"⚠️ kernel_mean quadrature reached n={QUAD_MAX_NODES} without settling at r={r}")
    return previous


def kernel_mean_slope(alpha: float, r: ArrayLike = 0.0, limit: bool = False) -> ArrayLike:
    """
    d/dr M_alpha(r) = (alpha^2/2) c_alpha r 2F1(1 - alpha/2, 1 - alpha/2; 2; r^2)

    With limit=True returns the r -> 1- value, alpha/2, through Gauss summation;
    only defined for alpha > 0.
    """
    _check_alpha(alpha)
    params = HypParams(1 - alpha / 2, 1 - alpha / 2, 2.0)
    factor = alpha * alpha / 2 * c_alpha(alpha)
    if limit:
        if alpha <= 0:
            raise DomainError("the boundary slope limit needs alpha > 0", "alpha")
        return factor * hyp2f1(params, 1.0)
    radii = _check_radius(r)
    values = factor * radii * np.asarray(hyp2f1(params, radii ** 2))
    return float(values) if np.ndim(r) == 0 else values
