"""Asymptotic series for delta(q;a,b) in inverse powers of the variance.

The coefficients s(l, j) come from expanding sin(z)/z and the higher
cumulants exp(-sum W_k y^(2k) / V^(k-1)) under a Gaussian weight, so they
depend on the race only through the ratios W_k.
"""

from typing import Dict, Mapping, Optional, Tuple
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, log, pi, prod, sqrt
import logging

from sympy.utilities.iterables import partitions

from ..arithmetic.modulus import (
    EULER_GAMMA,
    K_q,
    ResiduePair,
    iota,
    modulus_context,
    rho,
    script_L,
    von_mangoldt,
)
from ..arithmetic.prime_powers import H_and_H0, H_nj
from ..errors import InsufficientZeroDataError
from ..variance.higher_order import script_L_n
from ..variance.variance import (
    ZETA_2,
    M_star,
    U_second_cumulant,
    VarianceReport,
    congruence_sums,
    variance_V,
)
from .bessel import bessel_log_coeffs
from .characteristic import W_n_from_zeros
from .result import DensityResult, enclosure, require_biased_pair

logger = logging.getLogger(__name__)

MAX_SERIES_ORDER = 8
DEFAULT_SERIES_CONSTANT = 10.0
REMAINDER_LIMIT = 10 ** 8


def double_factorial(k: int) -> int:
    """(2k - 1)!! with (-1)!! = 1"""
    return prod(range(2 * k - 1, 0, -2))


def _partitions_of(total: int):
    if total == 0:
        yield {}
        return
    for part in partitions(total):
        yield dict(part)


def s_coeffs(l: int, j: int, W_values: Mapping[int, float]) -> float:
    """The series coefficient s(l, j)

    Args:
        l: Order in 1/V
        j: Power of rho^2 (0 <= j <= l)
        W_values: W_k keyed by k, at least for 2 <= k <= l + 1

    Returns:
        (-1)^j/(2j+1)! times the sum over i_2 + 2 i_3 + ... + l i_{l+1} = l - j
        of (2(l + sum i) - 1)!! prod (-W_k)^(i_k) / i_k!
    """
    if not 0 <= j <= l:
        raise ValueError(f"Need 0 <= j <= l, got l={l}, j={j}")
    missing = [k for k in range(2, l + 2) if k not in W_values]
    if l - j > 0 and missing:
        raise ValueError(f"Missing W_k for k in {missing}")

    total = 0.0
    for part in _partitions_of(l - j):
        # a part of size k - 1 carries one factor of W_k
        count = sum(part.values())
        term = float(double_factorial(l + count))
        for size, multiplicity in part.items():
            term *= (-W_values[size + 1]) ** multiplicity / factorial(multiplicity)
        total += term
    return (-1) ** j * total / factorial(2 * j + 1)


@dataclass(frozen=True)
class SeriesCoefficients:
    """Everything the order-K series needs besides rho and V"""
    order: int
    lambdas: Tuple[Fraction, ...]
    W: Dict[int, float]
    W_source: Dict[int, str]
    s_table: Dict[Tuple[int, int], float] = field(repr=False)

    @classmethod
    def build(cls, order: int, W: Mapping[int, float], sources: Optional[Mapping[int, str]] = None) -> "SeriesCoefficients":
        W = {1: 0.5, **dict(W)}
        sources = {1: "exact", **dict(sources or {})}
        table = {
            (l, j): s_coeffs(l, j, W)
            for l in range(order + 1)
            for j in range(l + 1)
        }
        return cls(
            order=order,
            lambdas=tuple(bessel_log_coeffs(order + 1)),
            W=W,
            W_source={k: sources.get(k, "given") for k in W},
            s_table=table,
        )

    def polynomial(self, rho_value: float, V: float) -> float:
        """sum over l <= K of V^(-l) sum_j rho^(2j) s(l, j)"""
        return sum(
            V ** (-l) * sum(rho_value ** (2 * j) * self.s_table[(l, j)] for j in range(l + 1))
            for l in range(self.order + 1)
        )


def series_W_values(
    q: int,
    pair: ResiduePair,
    K: int,
    V: float,
    zeros=None
) -> Tuple[Dict[int, float], Dict[int, str]]:
    """W_k for 2 <= k <= K + 1, from L-values for k = 2 and zero data beyond"""
    W: Dict[int, float] = {}
    sources: Dict[int, str] = {}
    if K >= 1:
        W[2] = U_second_cumulant(q, pair) / V
        sources[2] = "lvalues"
    if K >= 2:
        if zeros is None:
            raise InsufficientZeroDataError(
                f"Series order {K} for {q};{pair.a},{pair.b} needs zero data for W_3 and beyond"
            )
        for k in range(3, K + 2):
            W[k], _ = W_n_from_zeros(q, pair, k, zeros, V=V)
            sources[k] = "zeros"
    return W, sources


def delta_series(
    q: int,
    pair: ResiduePair,
    K: int = 1,
    variance: Optional[VarianceReport] = None,
    zeros=None,
    constant: float = DEFAULT_SERIES_CONSTANT
) -> DensityResult:
    """delta(q;a,b) from the asymptotic series truncated after order K

    Args:
        q: Modulus
        pair: a nonsquare, b square
        K: Series order
        variance: Precomputed variance report
        zeros: Zero lists keyed by label, needed for K >= 2
        constant: Heuristic constant of the truncation error

    Returns:
        DensityResult whose interval is heuristic
    """
    require_biased_pair(q, pair)
    if not 0 <= K <= MAX_SERIES_ORDER:
        raise ValueError(f"Series order must lie in [0, {MAX_SERIES_ORDER}], got {K}")
    report = variance or variance_V(q, pair)
    V = report.V
    r = rho(q)

    W, sources = series_W_values(q, pair, K, V, zeros)
    coefficients = SeriesCoefficients.build(K, W, sources)
    prefactor = r / sqrt(2 * pi * V)
    value = 0.5 + prefactor * coefficients.polynomial(r, V)

    budget = {
        "truncation": constant * r ** (2 * K + 3) / V ** (K + 1.5),
        "variance": prefactor / (2 * V) * report.error_bound,
    }
    logger.debug(f"Series order {K} for {q};{pair.a},{pair.b}: {value:.12f}")
    return enclosure(q, pair, value, budget, "series", order=K)


def _F_terms(q: int, pair: ResiduePair, log_power: int) -> float:
    """Lambda(n) log^k(n)/n over the least residues of a^2b^-2, ab^-1, ba^-1, b^2a^-2"""
    total = 0.0
    for i, weight in ((2, 1), (1, -4), (-1, -4), (-2, 1)):
        n = pair.power_ratio(i)
        term = von_mangoldt(n) / n
        if log_power:
            term *= log(n) ** log_power
        total += weight * term
    return total


def remainder_R_tilde(q: int, pair: ResiduePair, method: str = "arithmetic", limit: int = REMAINDER_LIMIT) -> float:
    """The prime-power sums over q <= n <= q^4 in the classes ab^-1, ba^-1 and 1

    Args:
        q: Modulus
        pair: Distinct reduced residues
        method: 'arithmetic' sums the progressions directly, 'lvalues' takes
            the complete sums from M*(q;a,b)
        limit: Largest n summed by the arithmetic method
    """
    if method == "lvalues":
        M, _ = M_star(q, pair)
        _, H0 = H_and_H0(q, pair)
        phi = modulus_context(q).phi
        return (M - phi * H0) / phi - von_mangoldt(pair.r1) / pair.r1 - von_mangoldt(pair.r2) / pair.r2
    if method != "arithmetic":
        raise ValueError(f"Unknown remainder method {method}")

    top = q ** 4
    if top > limit:
        logger.warning(f"Remainder sums for q={q} truncated at {limit:g} instead of q^4 = {top:g}")
        top = limit
    residues = (pair.r1, pair.r2, 1)
    upper = congruence_sums(q, residues, top)
    lower = congruence_sums(q, residues, q - 1)
    tail = {r: upper[r] - lower[r] for r in upper}
    return tail[pair.r1] + tail[pair.r2] - 2 * tail[1]


def delta_order2_arithmetic(
    q: int,
    pair: ResiduePair,
    remainder: str = "arithmetic",
    constant: float = 1.0
) -> DensityResult:
    """delta(q;a,b) from the order-two closed formula in arithmetic quantities

    The error budget is constant * rho^5 sqrt(log q) / phi^(5/2).
    """
    require_biased_pair(q, pair)
    if q < 150:
        raise ValueError(f"Order-two arithmetic formula needs q >= 150, got {q}")
    phi = modulus_context(q).phi
    r = rho(q)
    _, H0 = H_and_H0(q, pair)

    L_tilde = (
        script_L(q)
        + K_q(q, pair.a - pair.b)
        + iota(q, -pair.r1) * log(2)
        + H0
        + von_mangoldt(pair.r1) / pair.r1
        + von_mangoldt(pair.r2) / pair.r2
    )
    R_tilde = remainder_R_tilde(q, pair, remainder)

    square = pair.power_ratio(2)
    braces = (
        script_L_n(q, pair, 2)
        - (6 + 2 * iota(q, square)) * (EULER_GAMMA + log(2) + ZETA_2 / 2)
        - (2 * iota(q, -square) - 8 * iota(q, -pair.r1)) * (log(2) + ZETA_2 / 4)
        - 2 * _F_terms(q, pair, 0)
        + 2 * H_nj(q, pair, 2, 1)
        - _F_terms(q, pair, 1)
        - H_nj(q, pair, 2, 2)
    )
    value = 0.5 + r / (2 * sqrt(pi * phi * (L_tilde + R_tilde))) * (
        1
        - r ** 2 / (12 * phi * L_tilde)
        - 3 * braces / (16 * phi * L_tilde ** 2)
    )
    budget = {"truncation": constant * r ** 5 * sqrt(log(q)) / phi ** 2.5}
    logger.debug(f"Order-two arithmetic density for {q};{pair.a},{pair.b}: {value:.10f}")
    return enclosure(q, pair, value, budget, "order2_arithmetic", order=2)
