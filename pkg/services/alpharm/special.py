"""
Special Functions
- Gamma (Lanczos, g=7), log-Gamma and digamma for real arguments
- Pochhammer symbols by exact products
- Gauss hypergeometric 2F1 on [0, 1] and its x-derivative
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

import numpy as np
from loguru import logger

from .exceptions import ConvergenceError, DomainError

ArrayLike = Union[float, np.ndarray]

GAMMA_MAX = 170.0
LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

SERIES_TOL = 1e-16
SERIES_STREAK = 3
SERIES_CAP = 100000
# beyond this x the series is replaced by a connection formula in 1 - x
CONNECTION_X = 0.99
INTEGER_GAP = 1e-4
DIGAMMA_SHIFT = 10.0


def _is_nonpositive_integer(s: float) -> bool:
    return s <= 0 and float(s).is_integer()


def _lanczos_sum(z: float) -> float:
    # z is the shifted argument s - 1
    x = LANCZOS_COEFFS[0]
    for i in range(1, LANCZOS_G + 2):
        x += LANCZOS_COEFFS[i] / (z + i)
    return x


def gamma_fn(s: float) -> float:
    """
    Gamma function for 0 < s <= 170

    Args:
        s: Positive real argument

    Returns:
        Gamma(s)
    """
    s = float(s)
    if not (s > 0) or s > GAMMA_MAX:
        raise DomainError(f"gamma_fn requires 0 < s <= {GAMMA_MAX}, got {s}", "s")
    if s < 0.5:
        return gamma_fn(s + 1.0) / s
    z = s - 1.0
    t = z + LANCZOS_G + 0.5
    # split the power so t**(z+0.5) cannot overflow before exp(-t) is applied
    half = t ** (0.5 * (z + 0.5))
    return SQRT_TWO_PI * half * (half * math.exp(-t)) * _lanczos_sum(z)


def log_gamma(s: float) -> float:
    """log Gamma(s) for any s > 0 (no upper limit)"""
    s = float(s)
    if not (s > 0) or math.isinf(s):
        raise DomainError(f"log_gamma requires finite s > 0, got {s}", "s")
    if s < 0.5:
        return log_gamma(s + 1.0) - math.log(s)
    z = s - 1.0
    t = z + LANCZOS_G + 0.5
    return math.log(SQRT_TWO_PI * _lanczos_sum(z)) + (z + 0.5) * math.log(t) - t


def _log_abs_gamma(s: float) -> Tuple[float, float]:
    """log|Gamma(s)| and its sign, for real s away from the poles"""
    if s > 0:
        return log_gamma(s), 1.0
    if _is_nonpositive_integer(s):
        raise DomainError(f"Gamma has a pole at {s}", "s")
    shift = int(math.floor(-s)) + 1
    value = log_gamma(s + shift)
    sign = 1.0
    for j in range(shift):
        v = s + j
        value -= math.log(abs(v))
        if v < 0:
            sign = -sign
    return value, sign


def _gamma_ratio(numerator: Iterable[float], denominator: Iterable[float]) -> float:
    """prod Gamma(numerator) / prod Gamma(denominator); a pole below gives 0"""
    log_total = 0.0
    sign = 1.0
    for s in denominator:
        if _is_nonpositive_integer(s):
            return 0.0
        value, sg = _log_abs_gamma(s)
        log_total -= value
        sign *= sg
    for s in numerator:
        value, sg = _log_abs_gamma(s)
        log_total += value
        sign *= sg
    return sign * math.exp(log_total)


def digamma(s: float) -> float:
    """Digamma psi(s) for real s that is not a nonpositive integer"""
    s = float(s)
    if _is_nonpositive_integer(s):
        raise DomainError(f"digamma has a pole at {s}", "s")
    result = 0.0
    while s < DIGAMMA_SHIFT:
        result -= 1.0 / s
        s += 1.0
    inv2 = 1.0 / (s * s)
    tail = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))))
    return result + math.log(s) - 0.5 / s - tail


def pochhammer(a: float, n: int) -> float:
    """Rising factorial (a)_n = a(a+1)...(a+n-1), with (a)_0 = 1"""
    if n < 0:
        raise DomainError(f"pochhammer requires n >= 0, got {n}", "n")
    result = 1.0
    for j in range(int(n)):
        result *= a + j
    return result


def c_alpha(alpha: float) -> float:
    """Normalising constant Gamma(alpha/2 + 1)^2 / Gamma(1 + alpha)"""
    if not (alpha > -1):
        raise DomainError(f"alpha must exceed -1, got {alpha}", "alpha")
    if 1.0 + alpha <= GAMMA_MAX:
        return gamma_fn(alpha / 2 + 1.0) ** 2 / gamma_fn(1.0 + alpha)
    return math.exp(2.0 * log_gamma(alpha / 2 + 1.0) - log_gamma(1.0 + alpha))


@dataclass(frozen=True)
class HypParams:
    """Parameters (a, b; c) of the Gauss hypergeometric function"""
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"hypergeometric parameter {name} must be finite", name)
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"lower parameter c cannot be a nonpositive integer, got {self.c}", "c")

    @property
    def excess(self) -> float:
        """c - a - b, which decides convergence at x = 1"""
        return self.c - self.a - self.b

    @property
    def terminating_degree(self) -> Optional[int]:
        """Polynomial degree when a or b is a nonpositive integer, else None"""
        degrees = [int(-v) for v in (self.a, self.b) if _is_nonpositive_integer(v)]
        return min(degrees) if degrees else None

    def shifted(self) -> "HypParams":
        return HypParams(self.a + 1.0, self.b + 1.0, self.c + 1.0)


def _series(a: float, b: float, c: float, x: np.ndarray, degree: Optional[int] = None) -> np.ndarray:
    """Term-ratio summation of the defining series"""
    total = np.ones_like(x)
    term = np.ones_like(x)
    streak = np.zeros(x.shape, dtype=int)
    for n in range(SERIES_CAP):
        if degree is not None and n >= degree:
            return total
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * x
        total = total + term
        if degree is None:
            small = np.abs(term) <= SERIES_TOL * np.abs(total)
            streak = np.where(small, streak + 1, 0)
            if np.all(streak >= SERIES_STREAK):
                return total
    raise ConvergenceError(f"2F1({a}, {b}; {c}) series did not converge in {SERIES_CAP} terms", SERIES_CAP)


def _log_connection(a: float, b: float, c: float, m: int, y: np.ndarray) -> np.ndarray:
    """Connection formula in y = 1 - x when c - a - b = m is a nonnegative integer"""
    first = np.zeros_like(y)
    if m > 0:
        prefactor = _gamma_ratio([float(m), c], [a + m, b + m])
        term = np.ones_like(y)
        first = np.ones_like(y)
        for n in range(m - 1):
            term = term * ((a + n) * (b + n) / ((n + 1.0) * (n + 1.0 - m))) * y
            first = first + term
        first = prefactor * first

    log_y = np.log(y)
    coeff = 1.0 / math.factorial(m)
    d = -digamma(1.0) - digamma(m + 1.0) + digamma(a + m) + digamma(b + m)
    power = np.ones_like(y)
    total = coeff * (log_y + d)
    streak = np.zeros(y.shape, dtype=int)
    for n in range(SERIES_CAP):
        coeff *= (a + m + n) * (b + m + n) / ((n + 1.0) * (n + m + 1.0))
        d += -1.0 / (n + 1.0) - 1.0 / (n + m + 1.0) + 1.0 / (a + n + m) + 1.0 / (b + n + m)
        power = power * y
        term = coeff * power * (log_y + d)
        total = total + term
        small = np.abs(term) <= SERIES_TOL * np.abs(total)
        streak = np.where(small, streak + 1, 0)
        if np.all(streak >= SERIES_STREAK):
            break
    else:
        raise ConvergenceError(f"logarithmic 2F1 series did not converge in {SERIES_CAP} terms", SERIES_CAP)

    sign = -1.0 if m % 2 == 0 else 1.0
    second = sign * _gamma_ratio([c], [a, b]) * y ** m * total
    return first + second


def _gauss_connection(a: float, b: float, c: float, m: float, y: np.ndarray) -> np.ndarray:
    """Connection formula in y = 1 - x for non-integer c - a - b = m"""
    first = _gamma_ratio([c, m], [c - a, c - b]) * _evaluate(a, b, 1.0 - m, y)
    second = _gamma_ratio([c, -m], [a, b]) * y ** m * _evaluate(c - a, c - b, 1.0 + m, y)
    return first + second


def _near_integer_excess(a: float, b: float, m: float, nearest: int, y: np.ndarray) -> np.ndarray:
    """
    Quadratic interpolation in the excess across an integer, for 0 < |m - nearest| < INTEGER_GAP

    The nodes sit at nearest and nearest +/- 2 * INTEGER_GAP, with c = a + b + node.
    """
    h = 2.0 * INTEGER_GAP
    centre = _log_connection(a, b, a + b + nearest, nearest, y)
    below = _gauss_connection(a, b, a + b + nearest - h, nearest - h, y)
    above = _gauss_connection(a, b, a + b + nearest + h, nearest + h, y)
    s = m - nearest
    slope = (above - below) / (2.0 * h)
    curvature = (above - 2.0 * centre + below) / (2.0 * h * h)
    return centre + s * slope + s * s * curvature


def _near_one(a: float, b: float, c: float, x: np.ndarray) -> np.ndarray:
    y = 1.0 - x
    m = c - a - b
    nearest = round(m)
    if nearest < 0 and abs(m - nearest) < INTEGER_GAP:
        # Euler transformation moves the excess to -m > 0
        return y ** m * _evaluate(c - a, c - b, c, x)
    if m == nearest:
        return _log_connection(a, b, c, int(m), y)
    if abs(m - nearest) < INTEGER_GAP:
        return _near_integer_excess(a, b, m, int(nearest), y)
    return _gauss_connection(a, b, c, m, y)


def _evaluate(a: float, b: float, c: float, x: np.ndarray) -> np.ndarray:
    params = HypParams(a, b, c)
    degree = params.terminating_degree
    if degree is not None:
        return _series(a, b, c, x, degree)

    out = np.empty_like(x)
    at_one = x == 1.0
    near = (x > CONNECTION_X) & ~at_one
    plain = ~(near | at_one)
    if np.any(plain):
        out[plain] = _series(a, b, c, x[plain])
    if np.any(near):
        logger.debug(f"2F1({a}, {b}; {c}): connection formula for {int(near.sum())} points")
        out[near] = _near_one(a, b, c, x[near])
    if np.any(at_one):
        if params.excess <= 0:
            raise DomainError(f"2F1 diverges at x = 1 when c - a - b = {params.excess} <= 0", "x")
        out[at_one] = _gamma_ratio([c, params.excess], [c - a, c - b])
    return out


def _as_unit_interval(x: ArrayLike, upper_open: bool = False) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0) or np.any(arr > 1):
        raise DomainError("2F1 is evaluated on [0, 1] only", "x")
    if upper_open and np.any(arr == 1.0):
        raise DomainError("the x-derivative is evaluated on [0, 1) only", "x")
    return arr


def _scalar_or_array(result: np.ndarray, template: ArrayLike) -> ArrayLike:
    if np.ndim(template) == 0:
        return float(result.reshape(-1)[0])
    return result


def hyp2f1(p: HypParams, x: ArrayLike) -> ArrayLike:
    """
    Gauss hypergeometric function 2F1(a, b; c; x) for x in [0, 1]

    Args:
        p: Parameters (a, b; c)
        x: Scalar or array of arguments in [0, 1]

    Returns:
        Float for scalar input, array of the same shape otherwise
    """
    arr = _as_unit_interval(x)
    flat = arr.reshape(-1).copy()
    result = _evaluate(p.a, p.b, p.c, flat).reshape(arr.shape)
    return _scalar_or_array(result, x)


def hyp2f1_dx(p: HypParams, x: ArrayLike) -> ArrayLike:
    """d/dx 2F1(a, b; c; x) = (ab/c) 2F1(a+1, b+1; c+1; x) for x in [0, 1)"""
    arr = _as_unit_interval(x, upper_open=True)
    if p.a * p.b == 0:
        return _scalar_or_array(np.zeros_like(arr), x)
    flat = arr.reshape(-1).copy()
    up = p.shifted()
    result = (p.a * p.b / p.c) * _evaluate(up.a, up.b, up.c, flat).reshape(arr.shape)
    return _scalar_or_array(result, x)
