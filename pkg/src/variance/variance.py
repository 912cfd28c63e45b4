"""The variance V(q;a,b) of a two-way race and its companions.

V is the weighted sum of b(chi) over the characters modulo q with weights
|chi(a) - chi(b)|^2.  Evaluated through orthogonality it reduces to
arithmetic terms plus 2M*(q;a,b), a weighted sum of L'/L(1, chi*).
"""

from typing import Dict, Mapping, Optional, Tuple
from dataclasses import dataclass, field
from math import log, pi, sqrt
import logging

import numpy as np
from scipy.special import polygamma, zeta

from ..arithmetic.modulus import (
    EULER_GAMMA,
    K_q,
    ResiduePair,
    iota,
    lambda_over_phi,
    modulus_context,
    prime_divisor_log_sum,
    script_L,
)
from ..arithmetic.prime_powers import H_and_H0
from ..arithmetic.primes import von_mangoldt_table
from ..characters.dirichlet import CharacterGroup, character_group
from ..characters.sums import log_qstar_character_sum
from ..lfunctions.values import log_derivative_table
from ..lfunctions.zero_sums import b_n_from_zeros
from ..lfunctions.zeros import ZeroList

logger = logging.getLogger(__name__)

# Sum of 1/(1/4 + gamma^2) over the nontrivial zeros of the Riemann zeta function
ZETA_ZERO_SUM = 1 + EULER_GAMMA / 2 - log(4 * pi) / 2

ZETA_2 = float(zeta(2))
ROUNDOFF = 1e-12
VARIANCE_METHODS = ("lvalues", "arithmetic", "zeros")


@dataclass
class VarianceReport:
    """V(q;a,b) with the terms it was assembled from"""
    q: int
    pair: ResiduePair
    V: float
    components: Dict[str, float] = field(default_factory=dict)
    method: str = "lvalues"
    error_bound: float = 0.0

    def __post_init__(self):
        if not self.V > 0:
            raise ValueError(f"Variance for {self.q};{self.pair.a},{self.pair.b} is not positive: {self.V}")


def congruence_sums(q: int, residues: Tuple[int, ...], y: float, log_power: int = 0) -> Dict[int, float]:
    """sum of Lambda(n) log^k(n) / n over n <= y in each residue class"""
    n, weights = von_mangoldt_table(int(y))
    terms = weights / n
    if log_power:
        terms = terms * np.log(n.astype(np.float64)) ** log_power
    classes = n % q
    return {r: float(np.sum(terms[classes == r % q])) for r in set(residues)}


def b_values(q: int) -> np.ndarray:
    """b(chi) for every character modulo q (zero in the principal row)"""
    group = character_group(q)
    table = log_derivative_table(q)
    conductors = group.conductors.astype(np.float64)
    values = (
        np.log(conductors / pi)
        - EULER_GAMMA
        - (1 + group.parities) * log(2)
        + 2 * table.first.real
    )
    values[group.principal.index] = 0.0
    return values


def M_star(
    q: int,
    pair: ResiduePair,
    method: str = "lvalues",
    y: Optional[float] = None,
    constant: float = 1.0
) -> Tuple[float, float]:
    """M*(q;a,b), the weighted sum of L'/L(1, chi*) over nonprincipal characters

    Args:
        q: Modulus
        pair: Distinct reduced residues
        method: 'lvalues' sums certified L-values, 'arithmetic' truncates the
            three congruence sums of Lambda(n)/n at y and adds phi(q) H0
        y: Truncation point of the arithmetic method (default q^2)
        constant: Multiplier of the heuristic arithmetic error envelope

    Returns:
        Tuple of (value, error bound)
    """
    pair.require_distinct()
    group = character_group(q)
    if method == "lvalues":
        table = log_derivative_table(q)
        weights = group.race_weights(pair.a, pair.b)
        value = float(np.sum(weights * table.first.real))
        error = float(np.sum(weights * table.first_error)) + ROUNDOFF
        return value, error
    if method != "arithmetic":
        raise ValueError(f"Unknown M* method {method}")

    phi = group.context.phi
    y = float(q) ** 2 if y is None else y
    sums = congruence_sums(q, (pair.r1, pair.r2, 1), y)
    M = phi * (sums[pair.r1] + sums[pair.r2] - 2 * sums[1])
    _, H0 = H_and_H0(q, pair)
    error = constant * phi * log(q * y) ** 2 / sqrt(y)
    logger.warning(f"Arithmetic M* for q={q} uses a heuristic error envelope ({error:.2e} at y={y:g})")
    return M + phi * H0, error


def _arithmetic_components(q: int, pair: ResiduePair) -> Dict[str, float]:
    phi = modulus_context(q).phi
    return {
        "2phi_L": 2 * phi * script_L(q),
        "2phi_K": 2 * phi * K_q(q, pair.a - pair.b),
        "2phi_iota_log2": 2 * phi * iota(q, -pair.r1) * log(2),
    }


def _zero_sum_variance(
    group: CharacterGroup,
    weights: np.ndarray,
    zeros: Mapping[int, ZeroList],
    tail_mode: str
) -> Tuple[float, float]:
    total = 0.0
    error = 0.0
    for chi in group:
        w = weights[chi.index]
        if w == 0:
            continue
        conjugate = None if chi.is_real else zeros[chi.conjugate_label]
        result = b_n_from_zeros(zeros[chi.label], 1, conjugate=conjugate, tail_mode=tail_mode, chi=chi)
        total += w * result.value
        error += w * result.tail_bound
    return total, error


def variance_V(
    q: int,
    pair: ResiduePair,
    method: str = "lvalues",
    zeros: Optional[Mapping[int, ZeroList]] = None,
    tail_mode: str = "bound",
    y: Optional[float] = None,
    constant: float = 1.0
) -> VarianceReport:
    """The variance V(q;a,b)

    Args:
        q: Modulus
        pair: Distinct reduced residues
        method: 'lvalues', 'arithmetic' or 'zeros'
        zeros: Zero lists keyed by character label, for the zeros method;
            without them b(chi) comes from its closed form
        tail_mode: Tail handling for zero sums
        y: Truncation point for the arithmetic method
        constant: Heuristic error constant for the arithmetic method

    Returns:
        VarianceReport
    """
    pair.require_distinct()
    if method not in VARIANCE_METHODS:
        raise ValueError(f"Unknown variance method {method}")

    if method == "zeros":
        group = character_group(q)
        weights = group.race_weights(pair.a, pair.b)
        if zeros is None:
            V = float(np.sum(weights * b_values(q)))
            error = ROUNDOFF * V
            components = {"b_closed": V}
        else:
            V, error = _zero_sum_variance(group, weights, zeros, tail_mode)
            components = {"zero_sums": V}
        return VarianceReport(q, pair, V, components, method, error)

    M, error = M_star(q, pair, method, y=y, constant=constant)
    components = _arithmetic_components(q, pair)
    components["2M_star"] = 2 * M
    V = sum(components.values())
    logger.debug(f"V({q};{pair.a},{pair.b}) = {V:.12f} via {method}")
    return VarianceReport(q, pair, V, components, method, 2 * error)


def U_second_cumulant(q: int, pair: ResiduePair, route: str = "closed") -> float:
    """U(q;a,b) = W_2(q;a,b) V(q;a,b)

    Args:
        q: Modulus
        pair: Distinct reduced residues
        route: 'closed' for the arithmetic assembly, 'logderiv' for the
            per-character sum of b(chi), (log L)'' and trigamma terms

    Returns:
        The value of U
    """
    pair.require_distinct()
    group = character_group(q)
    table = log_derivative_table(q)
    weights = group.race_weights(pair.a, pair.b, n=2)

    if route == "logderiv":
        kappa = (1 - group.parities) // 2
        trigamma = polygamma(1, (1 + kappa) / 2)
        bracket = 2 * b_values(q) - 2 * table.second.real - trigamma / 2
        bracket[group.principal.index] = 0.0
        return float(np.sum(weights * bracket)) / 8
    if route != "closed":
        raise ValueError(f"Unknown U route {route}")

    phi = group.context.phi
    iota_square = iota(q, pair.power_ratio(2))
    iota_minus_square = iota(q, -pair.power_ratio(2))
    iota_minus = iota(q, -pair.r1)
    g1 = q // np.gcd(q, (pair.a - pair.b) % q)
    g2 = q // np.gcd(q, (pair.a * pair.a - pair.b * pair.b) % q)

    block_main = phi / 2 * (3 + iota_square) * (
        log(q / (2 * pi)) - EULER_GAMMA - prime_divisor_log_sum(q) - ZETA_2 / 2
    )
    block_gcd = phi / 2 * (4 * lambda_over_phi(int(g1)) - lambda_over_phi(int(g2)))
    block_parity = -phi / 2 * (iota_minus_square - 4 * iota_minus) * (log(2) + ZETA_2 / 4)
    combination = 2 * table.first - table.second
    block_lvalues = float(np.sum(weights * combination.real)) / 4
    return block_main + block_gcd + block_parity + block_lvalues


def variance_plus(q: int, pair: ResiduePair) -> float:
    """V+(q;a,b), the variance of E(x;q,a) + E(x;q,b)"""
    group = character_group(q)
    weights = group.race_weights(pair.a, pair.b, sign=1)
    weights[group.principal.index] = 0.0
    return float(np.sum(weights * b_values(q)))


def variance_plus_closed(q: int, pair: ResiduePair) -> float:
    """V+(q;a,b) assembled from orthogonality, without the principal character"""
    group = character_group(q)
    phi = group.context.phi
    table = log_derivative_table(q)
    weights = group.race_weights(pair.a, pair.b, sign=1)
    weights[group.principal.index] = 0.0

    weight_total = 2 * phi * (1 + iota(q, pair.r1)) - 4
    parity_total = 2 * phi * (iota(q, -1) + iota(q, -pair.r1)) - 4
    log_qstar = (
        2 * log_qstar_character_sum(q, 1)
        + log_qstar_character_sum(q, pair.r1)
        + log_qstar_character_sum(q, pair.r2)
    )
    M_plus = float(np.sum(weights * table.first.real))
    return (
        log_qstar
        - weight_total * (log(pi) + EULER_GAMMA)
        - (weight_total + parity_total) * log(2)
        + 2 * M_plus
    )
