from typing import Optional
from dataclasses import dataclass
from math import inf, log, pi
import logging

import numpy as np
from scipy.integrate import quad

from ..characters.dirichlet import DirichletCharacter
from ..errors import InsufficientZeroDataError
from .values import b_chi_closed
from .zeros import ZeroList, zero_count_upper

logger = logging.getLogger(__name__)

MIN_SUM_HEIGHT = 100.0
TAIL_MODES = ("bound", "estimate", "closed")


@dataclass(frozen=True)
class ZeroSum:
    """Sum of (1/4 + gamma^2)^(-n) over the zeros of one character"""
    n: int
    value: float
    partial: float
    tail: float
    tail_bound: float
    height: float

    def __float__(self) -> float:
        return self.value


def inverse_power_sum(ordinates: np.ndarray, n: int) -> float:
    """sum (1/4 + gamma^2)^(-n), smallest terms first"""
    terms = (0.25 + np.asarray(ordinates, dtype=np.float64) ** 2) ** (-n)
    return float(np.sum(terms[::-1]))


def tail_bound(conductor: int, T: float, n: int, count: int) -> float:
    """Bound for the sum over zeros with |gamma| > T

    Partial summation against the zero-count upper bound, less the
    contribution already counted up to T.
    """
    integrand = lambda t: zero_count_upper(conductor, t) * 2 * n * t * (0.25 + t * t) ** (-n - 1)
    integral, _ = quad(integrand, T, inf, limit=200)
    return max(integral - count * (0.25 + T * T) ** (-n), 0.0)


def tail_estimate(conductor: int, T: float, n: int) -> float:
    """Smooth-density estimate of the two-sided tail beyond T"""
    density = lambda t: log(conductor * t / (2 * pi)) / pi * (0.25 + t * t) ** (-n)
    value, _ = quad(density, T, inf, limit=200)
    return value


def b_n_from_zeros(
    zeros: ZeroList,
    n: int = 1,
    conjugate: Optional[ZeroList] = None,
    tail_mode: str = "bound",
    chi: Optional[DirichletCharacter] = None
) -> ZeroSum:
    """b_n(chi) from the critical zeros of chi and of its conjugate

    Args:
        zeros: Positive ordinates for chi
        n: Power of (1/4 + gamma^2)^(-1)
        conjugate: Positive ordinates for the conjugate character; omitted
            for real characters, whose list is counted twice
        tail_mode: 'bound' returns the truncated sum with a bound on the
            remainder, 'estimate' adds the smooth-density tail, 'closed'
            (n = 1 only) completes the sum from b_chi_closed
        chi: Character, needed by the 'closed' mode

    Returns:
        ZeroSum with value, truncated part and tail information
    """
    if n < 1:
        raise ValueError(f"Zero-sum power must be positive, got {n}")
    if tail_mode not in TAIL_MODES:
        raise ValueError(f"Unknown tail mode {tail_mode}")
    height = zeros.height if conjugate is None else min(zeros.height, conjugate.height)
    if height < MIN_SUM_HEIGHT:
        raise InsufficientZeroDataError(
            f"Zeros of {zeros.name} cover height {height}, need at least {MIN_SUM_HEIGHT}"
        )

    is_real = pow(zeros.label, -1, zeros.modulus) == zeros.label if zeros.modulus > 1 else True
    if conjugate is None and not is_real:
        raise ValueError(f"Character {zeros.name} is complex; zeros of its conjugate are required")
    own = zeros.up_to(height)
    other = own if conjugate is None else conjugate.up_to(height)
    partial = inverse_power_sum(own, n) + inverse_power_sum(other, n)
    count = len(own) + len(other)

    bound = tail_bound(zeros.conductor, height, n, count)
    tail = 0.0
    if tail_mode == "estimate":
        tail = tail_estimate(zeros.conductor, height, n)
        bound = max(bound, tail)
    elif tail_mode == "closed":
        if n != 1 or chi is None:
            raise ValueError("Closed tail completion needs n = 1 and the character")
        tail = b_chi_closed(chi) - partial
        bound = 0.0
        if tail < 0:
            logger.warning(f"Zero sum for {zeros.name} exceeds its closed form by {-tail:.3e}")

    logger.debug(f"b_{n}({zeros.name}) partial {partial:.12f} over {count} zeros, tail bound {bound:.3e}")
    return ZeroSum(n=n, value=partial + tail, partial=partial, tail=tail, tail_bound=bound, height=height)
