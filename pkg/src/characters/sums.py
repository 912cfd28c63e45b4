from math import comb, log
import logging

import numpy as np

from ..arithmetic.modulus import (
    ResiduePair,
    iota,
    lambda_over_phi,
    modulus_context,
    prime_divisor_log_sum,
)
from .dirichlet import CharacterGroup

logger = logging.getLogger(__name__)


def _column_values(group: CharacterGroup, c: int) -> np.ndarray:
    """chi(c) for every character in the group"""
    exponents = group.table[:, c % group.q].astype(np.int64)
    values = np.exp(2j * np.pi * exponents / group.exponent)
    values[exponents < 0] = 0.0
    return values


def character_sum(group: CharacterGroup, m: int) -> complex:
    """Direct sum of chi(m) over the group"""
    return complex(_column_values(group, m).sum())


def weighted_char_sum(
    group: CharacterGroup,
    pair: ResiduePair,
    n: int,
    c: int,
    method: str = "binomial"
) -> complex:
    """Sum over chi of |chi(a) - chi(b)|^(2n) chi(c)

    Args:
        group: Characters modulo q
        pair: Racing residues
        n: Power of the weight
        c: Reduced residue
        method: 'binomial' expands the weight and applies orthogonality,
            'direct' sums over the character table

    Returns:
        The sum, an integer multiple of phi(q) for the binomial method
    """
    group.context.check_reduced(c)
    if n < 1:
        raise ValueError(f"Weight power must be positive, got {n}")
    if method == "direct":
        weights = group.race_weights(pair.a, pair.b, n)
        return complex(np.sum(weights * _column_values(group, c)))
    if method != "binomial":
        raise ValueError(f"Unknown summation method {method}")
    q = group.q
    total = 0
    for i in range(-n, n + 1):
        total += (-1) ** i * comb(2 * n, n + i) * iota(q, pair.power_ratio(i) * c)
    return complex(len(group) * total)


def log_qstar_character_sum(q: int, c: int) -> float:
    """Closed form of the sum of chi(c) log q* over all chi modulo q"""
    phi = modulus_context(q).phi
    if iota(q, c):
        return phi * (log(q) - prime_divisor_log_sum(q))
    g = np.gcd(q, (c - 1) % q)
    return -phi * lambda_over_phi(q // int(g))


def log_qstar_weighted_sum(group: CharacterGroup, pair: ResiduePair, method: str = "closed") -> float:
    """Sum over chi of |chi(a) - chi(b)|^2 log q*

    Args:
        group: Characters modulo q
        pair: Racing residues
        method: 'closed' for the arithmetic formula, 'direct' for the
            conductor-table summation
    """
    if method == "direct":
        weights = group.race_weights(pair.a, pair.b)
        return float(np.sum(weights * np.log(group.conductors.astype(np.float64))))
    if method != "closed":
        raise ValueError(f"Unknown summation method {method}")
    q = group.q
    # |chi(a) - chi(b)|^2 = 2 - chi(ab^-1) - chi(ba^-1)
    return (
        2 * log_qstar_character_sum(q, 1)
        - log_qstar_character_sum(q, pair.r1)
        - log_qstar_character_sum(q, pair.r2)
    )


def prime_power_defect_sum(group: CharacterGroup, r: int, p: int, e: int) -> complex:
    """Sum over chi of chi(r)(chi*(p^e) - chi(p^e)), by direct evaluation"""
    if group.q % p:
        raise ValueError(f"{p} does not divide {group.q}")
    total = 0j
    pe = p ** e
    for chi in group:
        primitive = group.primitive(chi)
        total += chi.value(r) * (primitive.value(pe) - chi.value(pe))
    return total
