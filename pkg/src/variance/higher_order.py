from typing import Optional
from dataclasses import dataclass
from math import comb, gcd, log, pi
import logging

import numpy as np

from ..arithmetic.modulus import ResiduePair, iota, lambda_over_phi, modulus_context, prime_divisor_log_sum
from ..arithmetic.prime_powers import H_nj
from ..characters.dirichlet import character_group
from ..lfunctions.values import log_derivative_table
from .variance import congruence_sums

logger = logging.getLogger(__name__)

MAX_ORDER = 2


@dataclass(frozen=True)
class HigherOrderTerms:
    """Arithmetic ingredients of the 2n-th cumulant"""
    n: int
    j: int
    L_n: float
    M_nj: float
    M_nj_star: float
    H_nj: float


def _check_orders(n: int, j: int) -> None:
    if not 1 <= j <= n:
        raise ValueError(f"Need 1 <= j <= n, got n={n}, j={j}")
    if n > MAX_ORDER:
        raise ValueError(f"Orders above {MAX_ORDER} need zero data, got n={n}")


def script_L_n(q: int, pair: ResiduePair, n: int) -> float:
    """The arithmetic sum L_n(q) attached to |chi(a) - chi(b)|^(2n)"""
    base = log(q / pi) - prime_divisor_log_sum(q)
    total = 0.0
    for i in range(-n, n + 1):
        r = pair.power_ratio(i)
        weight = (-1) ** i * comb(2 * n, n + i)
        if iota(q, r):
            total += weight * base
        else:
            total -= weight * lambda_over_phi(q // gcd(q, r - 1))
    return total


def M_nj(
    q: int,
    pair: ResiduePair,
    n: int,
    j: int,
    starred: bool = True,
    method: str = "lvalues",
    y: Optional[float] = None
) -> float:
    """(1/phi(q)) sum over chi of |chi(a) - chi(b)|^(2n) times the j-th derivative of log L at 1

    Args:
        q: Modulus
        pair: Distinct reduced residues
        n: Power of the weight
        j: Order of the derivative (1 or 2)
        starred: Use L(s, chi*) rather than L(s, chi)
        method: 'lvalues' or 'arithmetic' (truncated prime-power sums)
        y: Truncation point of the arithmetic method (default q^2)
    """
    _check_orders(n, j)
    pair.require_distinct()
    phi = modulus_context(q).phi
    correction = H_nj(q, pair, n, j)

    if method == "lvalues":
        group = character_group(q)
        table = log_derivative_table(q)
        derivative = table.first if j == 1 else table.second
        weights = group.race_weights(pair.a, pair.b, n=n)
        value = float(np.sum(weights * derivative.real)) / phi
        return value if starred else value - correction
    if method != "arithmetic":
        raise ValueError(f"Unknown method {method}")

    y = float(q) ** 2 if y is None else y
    residues = tuple(pair.power_ratio(i) for i in range(-n, n + 1))
    sums = congruence_sums(q, residues, y, log_power=j - 1)
    value = (-1) ** j * sum(
        (-1) ** i * comb(2 * n, n + i) * sums[pair.power_ratio(i)]
        for i in range(-n, n + 1)
    )
    return value + correction if starred else value


def higher_order_terms(q: int, pair: ResiduePair, n: int, j: int) -> HigherOrderTerms:
    """L_n(q), M_{n,j}(q;a,b), its starred form and H_{n,j}(q;a,b)"""
    _check_orders(n, j)
    star = M_nj(q, pair, n, j, starred=True)
    correction = H_nj(q, pair, n, j)
    logger.debug(f"Higher-order terms n={n}, j={j} for {q};{pair.a},{pair.b}")
    return HigherOrderTerms(
        n=n,
        j=j,
        L_n=script_L_n(q, pair, n),
        M_nj=star - correction,
        M_nj_star=star,
        H_nj=correction,
    )
