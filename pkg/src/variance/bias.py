from typing import Iterable, List, Tuple
from dataclasses import dataclass
from fractions import Fraction
from math import log
import logging

from sympy import factorint

from ..arithmetic.modulus import (
    K_q,
    ResiduePair,
    euler_phi,
    iota,
    residue_class_rating_membership,
    von_mangoldt,
)
from ..arithmetic.prime_powers import H_and_H0
from .variance import congruence_sums

logger = logging.getLogger(__name__)

# Loose ceiling on Delta(q;a,b) over all moduli and pairs
DELTA_ENVELOPE = 7.0


@dataclass(frozen=True)
class DeltaBreakdown:
    """The bias functional Delta(q;a,b) term by term"""
    K_term: float
    iota_term: float
    r1_term: float
    r2_term: float
    H_term: float

    @property
    def total(self) -> float:
        return self.K_term + self.iota_term + self.r1_term + self.r2_term + self.H_term


def delta_discriminant(q: int, pair: ResiduePair) -> DeltaBreakdown:
    """Delta(q;a,b) = K_q(a-b) + iota_q(-ab^-1) log 2 + Lambda(r1)/r1 + Lambda(r2)/r2 + H(q;a,b)"""
    pair.require_distinct()
    H, _ = H_and_H0(q, pair)
    return DeltaBreakdown(
        K_term=K_q(q, pair.a - pair.b),
        iota_term=iota(q, -pair.r1) * log(2),
        r1_term=von_mangoldt(pair.r1) / pair.r1,
        r2_term=von_mangoldt(pair.r2) / pair.r2,
        H_term=H,
    )


def _prime_power(n: Fraction) -> Tuple[int, int]:
    """(p, j) when n is p^j with j >= 1, else (0, 0)"""
    if n.denominator != 1 or n <= 1:
        return 0, 0
    factors = factorint(n.numerator)
    if len(factors) != 1:
        return 0, 0
    ((p, j),) = factors.items()
    return p, j


def rating(r, s) -> float:
    """The rating R(r,s) of the family of races delta(q; r + sq, 1)

    Args:
        r: Rational number (int, str or Fraction)
        s: Rational number (int, str or Fraction)

    Returns:
        Nonnegative rating
    """
    r = Fraction(r)
    s = Fraction(s)
    if s.denominator == 1:
        if r == -1:
            return log(2)
        p, j = _prime_power(r)
        return log(p) / p ** j if p else 0.0

    p, k = _prime_power(Fraction(s.denominator))
    if not p:
        return 0.0
    q_j, j = _prime_power(r)
    if q_j == p:
        return log(p) / euler_phi(p ** (j + k))
    if r.numerator == 1:
        q_j, j = _prime_power(Fraction(r.denominator))
        if r == 1 or (q_j == p and j < k):
            return log(p) / euler_phi(p ** k)
        if q_j == p and j == k:
            return log(p) / p ** k
    return 0.0


def rating_limit_residuals(r, s, q_list: Iterable[int]) -> List[Tuple[int, float]]:
    """Delta(q; r + sq, 1) - R(r,s) along admissible moduli

    Raises:
        ValueError: If some q is not admissible for (r, s)
    """
    r = Fraction(r)
    s = Fraction(s)
    target = rating(r, s)
    residuals = []
    for q in q_list:
        if not residue_class_rating_membership(r, s, q):
            raise ValueError(f"Modulus {q} is not admissible for the family ({r}, {s})")
        a = int(r + s * q) % q
        breakdown = delta_discriminant(q, ResiduePair.of(q, a, 1))
        residuals.append((q, breakdown.total - target))
    logger.debug(f"Computed {len(residuals)} rating residuals for ({r}, {s})")
    return residuals


def arithmetic_M_tilde(q: int, a: int, y: float = 1e6) -> float:
    """sum of Lambda(n)/n over n <= y in the classes a and a^-1 modulo q"""
    pair = ResiduePair.of(q, a, 1)
    sums = congruence_sums(q, (pair.r1, pair.r2), y)
    return sums[pair.r1] + sums[pair.r2]
