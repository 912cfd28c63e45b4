from typing import Tuple
from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np
from scipy.special import j0

MAX_BESSEL_ORDER = 30

# Below this argument log J0 is summed from its power series
SERIES_CUTOFF = 0.3
SERIES_TERMS = 10


@lru_cache(maxsize=1)
def _bessel_log_table() -> Tuple[Fraction, ...]:
    # J0 as a series in u = z^2, then log via f' = f (log f)'
    c = [Fraction((-1) ** k, 4 ** k * factorial(k) ** 2) for k in range(MAX_BESSEL_ORDER + 1)]
    g = [Fraction(0)] * (MAX_BESSEL_ORDER + 1)
    for k in range(1, MAX_BESSEL_ORDER + 1):
        g[k] = c[k] - sum(i * g[i] * c[k - i] for i in range(1, k)) / k
    return tuple(g)


def bessel_log_coeffs(mmax: int) -> list:
    """Exact coefficients lambda_{2m} of log J0(z) = sum lambda_{2m} z^(2m)

    Args:
        mmax: Largest m to compute (at most 30)

    Returns:
        List of Fractions indexed by m, with entry 0 equal to 0
    """
    if not 0 <= mmax <= MAX_BESSEL_ORDER:
        raise ValueError(f"Bessel coefficient order must lie in [0, {MAX_BESSEL_ORDER}], got {mmax}")
    return list(_bessel_log_table()[:mmax + 1])


def bessel_log_coefficient(n: int) -> Fraction:
    """lambda_n for any index n (zero for odd n)"""
    if n < 0:
        raise ValueError(f"Coefficient index must be nonnegative, got {n}")
    if n % 2:
        return Fraction(0)
    return bessel_log_coeffs(n // 2)[n // 2]


_SERIES = np.array([float(c) for c in _bessel_log_table()[:SERIES_TERMS + 1]])


def log_abs_j0(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """log|J0(z)| and a mask of arguments where J0 is negative"""
    z = np.asarray(z, dtype=np.float64)
    small = np.abs(z) < SERIES_CUTOFF
    result = np.empty_like(z)
    u = z[small] ** 2
    result[small] = np.polynomial.polynomial.polyval(u, _SERIES)
    values = j0(z[~small])
    with np.errstate(divide="ignore"):
        result[~small] = np.log(np.abs(values))
    negative = np.zeros(z.shape, dtype=bool)
    negative[~small] = values < 0
    return result, negative
