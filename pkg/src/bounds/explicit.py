"""Closed-form explicit bounds on variances, densities and related quantities.

These are inequalities, not computations: scans and the CLI use them to check
that computed values land where the estimates say they must.
"""

from typing import Optional, Tuple
from math import log, pi
import logging

from sympy import isprime

from ..arithmetic.modulus import ResiduePair, modulus_context, rho
from ..density.erf_bounds import erf_lemma_error, gaussian_density, require_erf_variance

logger = logging.getLogger(__name__)

PRIME_VARIANCE_MIN_Q = 150
COMPOSITE_VARIANCE_MIN_Q = 500
M_STAR_LOG_CONSTANT = 23.619
PRIME_SQUARE_LOG_CONSTANT = 2 * M_STAR_LOG_CONSTANT

# published ceilings on delta(q;a,b)
PRIME_DENSITY_CEILING = (400, 0.5262)
LARGE_PRIME_DENSITY_CEILING = (1000, 0.51)
COMPOSITE_DENSITY_CEILING = (480, 0.75)
COMPOSITE_CEILING_EXCEPTIONS = frozenset({840, 1320})


def _require_at_least(q: int, floor: int) -> None:
    if q < floor:
        raise ValueError(f"Bound needs q >= {floor}, got {q}")


def M_star_deviation_bound(q: int) -> float:
    """Bound on |M*(q;a,b)/phi(q) - (Lambda(r1)/r1 + Lambda(r2)/r2 + H0(q;a,b))| for q >= 150"""
    _require_at_least(q, PRIME_VARIANCE_MIN_Q)
    return M_STAR_LOG_CONSTANT * log(q) ** 2 / q


def prime_variance_bounds(q: int) -> Tuple[float, float]:
    """Lower and upper bounds on V(q;a,b) for a prime modulus q >= 150"""
    if not isprime(q):
        raise ValueError(f"{q} is not prime")
    _require_at_least(q, PRIME_VARIANCE_MIN_Q)
    spread = PRIME_SQUARE_LOG_CONSTANT * log(q) ** 2
    return (
        2 * (q - 1) * (log(q) - 2.42) - spread,
        2 * (q - 1) * (log(q) - 0.99) + spread,
    )


def composite_variance_bounds(q: int) -> Tuple[float, float]:
    """Lower and upper bounds on V(q;a,b) for any q >= 500"""
    _require_at_least(q, COMPOSITE_VARIANCE_MIN_Q)
    phi = modulus_context(q).phi
    return (
        2 * phi * (log(q) - 1.02 * log(log(q)) - 7.34),
        2 * phi * (log(q) + 6.1),
    )


def H0_bounds(q: int) -> Tuple[float, float]:
    _require_at_least(q, 3)
    return -4 * log(q) / q, 4.56


def prime_divisor_log_sum_bound(q: int) -> float:
    """Upper bound on the sum of log p/(p - 1) over primes p dividing q"""
    _require_at_least(q, 3)
    return 1.02 * log(log(q)) + 3.04


def rho_upper_bound(q: int) -> float:
    """Upper bound on rho(q), the number of square classes"""
    _require_at_least(q, 3)
    return 2 * q ** (1.04 / log(log(q)))


def zeros_near_height_bound(q: int, T: float) -> float:
    """Bound on the number of zeros of L(s, chi), chi mod q, with ordinate within 2 of T"""
    return 4 * log(0.609 * q * (abs(T) + 5))


def erf_main_term(q: int, pair: ResiduePair, V: float) -> Tuple[float, float]:
    """Gaussian approximation 1/2 + 1/2 Erf(rho/sqrt(2V)) with its explicit error

    Raises:
        MethodPreconditionError: If V < 531
    """
    require_erf_variance(q, pair, V)
    return gaussian_density(rho(q), V), erf_lemma_error(q, V)


def density_theorem_bound(q: int) -> Optional[float]:
    """Tightest published ceiling on delta(q;a,b) that applies to q, if any"""
    if isprime(q):
        for floor, ceiling in (LARGE_PRIME_DENSITY_CEILING, PRIME_DENSITY_CEILING):
            if q >= floor:
                return ceiling
    floor, ceiling = COMPOSITE_DENSITY_CEILING
    if q > floor and q not in COMPOSITE_CEILING_EXCEPTIONS:
        return ceiling
    return None


def lowest_zero_variance_lift(q: int, c: float) -> float:
    """Relative increase of the variance when the lowest zero sits at c times the mean spacing

    Args:
        q: Modulus, q >= 3
        c: Height of the lowest zero as a multiple of 2 pi/log q

    Returns:
        Fractional change t; positive when c < 1
    """
    _require_at_least(q, 3)
    if c < 0:
        raise ValueError(f"Zero height factor must be nonnegative, got {c}")
    L = log(q)
    return ((0.25 + (2 * pi * c / L) ** 2) ** -1 - (0.25 + (2 * pi / L) ** 2) ** -1) / L


def lowest_zero_lift_limit(q: int) -> float:
    """Limit of lowest_zero_variance_lift as the zero approaches the real axis"""
    _require_at_least(q, 3)
    L = log(q)
    return 64 * pi ** 2 / ((L ** 2 + 16 * pi ** 2) * L)
