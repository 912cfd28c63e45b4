from typing import Tuple
from math import ceil, log, log1p, sqrt
import logging

import numpy as np

from ..arithmetic.primes import von_mangoldt_table
from ..characters.dirichlet import DirichletCharacter

logger = logging.getLogger(__name__)

# exp(-36) bounds the relative weight of the dropped tail
TAIL_EXPONENT = 36.0


def smoothing_cutoff(y: float) -> int:
    """Summation limit beyond which the smoothed tail is below 1e-15"""
    return int(ceil(y * (TAIL_EXPONENT + log1p(log1p(y))))) + 2


def smoothed_sum_bound(q: int, y: float) -> float:
    """Certified distance between L'/L(1, chi) and the smoothed sum"""
    log_q = log(q)
    return (14.27 * log_q + 16.25) / sqrt(y) + (16.1 * log_q + 17.83) / y ** 0.75


def logderiv_smoothed(chi: DirichletCharacter, y: float) -> Tuple[complex, float]:
    """Smoothed prime sum approximating L'/L(1, chi)

    Args:
        chi: Nonprincipal character modulo q
        y: Smoothing length

    Returns:
        Tuple of (-sum chi(n) Lambda(n) exp(-n/y) / n, certified error bound)
    """
    if chi.is_principal:
        raise ValueError(f"Principal character {chi.name} has no finite L'/L at 1")
    if y <= 0:
        raise ValueError(f"Smoothing length must be positive, got {y}")
    limit = smoothing_cutoff(y)
    logger.debug(f"Smoothed sum for {chi.name} with y={y:g} up to {limit}")
    n, weights = von_mangoldt_table(limit)
    values = chi.values()[n % chi.modulus]
    terms = weights * np.exp(-n / y) / n
    value = -complex(np.sum(values * terms))
    return value, smoothed_sum_bound(chi.modulus, y)


def residue_class_smoothed_sum(q: int, a: int) -> Tuple[float, float]:
    """Sum of Lambda(n) exp(-n/q^2) / n over n = a (mod q)

    Returns:
        Tuple of (value, bound on its distance from Lambda(a)/a)
    """
    y = float(q) ** 2
    n, weights = von_mangoldt_table(smoothing_cutoff(y))
    mask = n % q == a % q
    value = float(np.sum(weights[mask] * np.exp(-n[mask] / y) / n[mask]))
    log_q = log(q)
    return value, (2 * log_q ** 2 + 3.935 * log_q) / q
