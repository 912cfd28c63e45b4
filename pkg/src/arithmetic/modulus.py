from typing import List, Tuple
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, log, pi
import logging

import numpy as np
from sympy import factorint

logger = logging.getLogger(__name__)

# Euler's constant to 40 places
EULER_GAMMA_DIGITS = "0.5772156649015328606065120900824024310422"
EULER_GAMMA = float(EULER_GAMMA_DIGITS)

LOG_2PI = log(2 * pi)


def factorize(q: int) -> List[Tuple[int, int]]:
    """Canonical ascending factorization of q (empty for q = 1)"""
    if q < 1:
        raise ValueError(f"Cannot factor non-positive integer {q}")
    return sorted(factorint(q).items())


def euler_phi(q: int) -> int:
    result = 1
    for p, k in factorize(q):
        result *= p ** (k - 1) * (p - 1)
    return result


def rho(q: int) -> int:
    """Number of solutions of x^2 = 1 (mod q)

    Args:
        q: Positive modulus

    Returns:
        2^omega for odd q, 2^(omega-1) when 2 || q, 2^omega when 4 || q
        and 2^(omega+1) when 8 | q
    """
    factors = factorize(q)
    omega = len(factors)
    two_power = dict(factors).get(2, 0)
    if two_power == 0:
        return 2 ** omega
    if two_power == 1:
        return 2 ** (omega - 1)
    if two_power == 2:
        return 2 ** omega
    return 2 ** (omega + 1)


def von_mangoldt(n: int) -> float:
    if n < 1:
        raise ValueError(f"von Mangoldt function undefined at {n}")
    if n == 1:
        return 0.0
    factors = factorint(n)
    if len(factors) != 1:
        return 0.0
    (p,) = factors
    return log(p)


def iota(q: int, n: int) -> int:
    """Indicator of n = 1 (mod q)"""
    return 1 if (n - 1) % q == 0 else 0


def inverse_mod(a: int, q: int) -> int:
    if gcd(a, q) != 1:
        raise ValueError(f"{a} is not a reduced residue modulo {q}")
    return pow(a, -1, q) if q > 1 else 0


def least_residue(a: int, q: int) -> int:
    """Least positive residue of a modulo q (q itself for a = 0)"""
    r = a % q
    return r if r else q


def lambda_over_phi(m: int) -> float:
    if m == 1:
        return 0.0
    return von_mangoldt(m) / euler_phi(m)


def K_q(q: int, n: int) -> float:
    """Lambda(q/(q,n))/phi(q/(q,n)) - Lambda(q)/phi(q)"""
    if q < 1:
        raise ValueError(f"Modulus must be positive, got {q}")
    return lambda_over_phi(q // gcd(q, n)) - lambda_over_phi(q)


def prime_divisor_log_sum(q: int) -> float:
    return sum(log(p) / (p - 1) for p, _ in factorize(q))


def script_L(q: int) -> float:
    """log q - sum_{p|q} log p/(p-1) + Lambda(q)/phi(q) - (gamma_0 + log 2 pi)"""
    return (
        log(q)
        - prime_divisor_log_sum(q)
        + lambda_over_phi(q)
        - (EULER_GAMMA + LOG_2PI)
    )


@dataclass(frozen=True)
class ModulusContext:
    """Factorization and group data for a modulus q"""
    q: int
    factors: Tuple[Tuple[int, int], ...]
    phi: int
    rho: int
    omega: int

    @classmethod
    def from_modulus(cls, q: int) -> "ModulusContext":
        factors = tuple(factorize(q))
        phi = 1
        for p, k in factors:
            phi *= p ** (k - 1) * (p - 1)
        return cls(q=q, factors=factors, phi=phi, rho=rho(q), omega=len(factors))

    @property
    def primes(self) -> List[int]:
        return [p for p, _ in self.factors]

    def prime_power(self, p: int) -> int:
        """Exact power p^nu dividing q"""
        for prime, k in self.factors:
            if prime == p:
                return p ** k
        raise ValueError(f"{p} does not divide {self.q}")

    @property
    def is_twice_odd(self) -> bool:
        return self.q % 4 == 2

    @cached_property
    def square_counts(self) -> np.ndarray:
        """Number of square roots of each residue class"""
        x = np.arange(self.q, dtype=np.int64)
        return np.bincount((x * x) % self.q, minlength=self.q)

    @cached_property
    def reduced_residues(self) -> np.ndarray:
        n = np.arange(self.q, dtype=np.int64)
        return n[np.gcd(n, self.q) == 1] if self.q > 1 else np.array([0])

    def check_reduced(self, a: int) -> int:
        if gcd(a, self.q) != 1:
            raise ValueError(f"{a} is not a reduced residue modulo {self.q}")
        return a % self.q


@lru_cache(maxsize=512)
def modulus_context(q: int) -> ModulusContext:
    return ModulusContext.from_modulus(q)


def c_qa(q: int, a: int) -> int:
    """-1 plus the number of square roots of a modulo q"""
    ctx = modulus_context(q)
    a = ctx.check_reduced(a)
    return int(ctx.square_counts[a]) - 1


def is_square_mod(q: int, a: int) -> bool:
    ctx = modulus_context(q)
    a = ctx.check_reduced(a)
    return bool(ctx.square_counts[a] > 0)


@dataclass(frozen=True)
class ResiduePair:
    """Ordered pair of reduced residues racing modulo q"""
    q: int
    a: int
    b: int
    r1: int
    r2: int

    @classmethod
    def of(cls, q: int, a: int, b: int) -> "ResiduePair":
        if q < 1:
            raise ValueError(f"Modulus must be positive, got {q}")
        ctx = modulus_context(q)
        a = ctx.check_reduced(a)
        b = ctx.check_reduced(b)
        r1 = least_residue(a * inverse_mod(b, q), q)
        r2 = least_residue(b * inverse_mod(a, q), q)
        return cls(q=q, a=a, b=b, r1=r1, r2=r2)

    @property
    def distinct(self) -> bool:
        return (self.a - self.b) % self.q != 0

    def require_distinct(self) -> None:
        if not self.distinct:
            raise ValueError(f"Residues {self.a} and {self.b} coincide modulo {self.q}")

    def swapped(self) -> "ResiduePair":
        return ResiduePair(q=self.q, a=self.b, b=self.a, r1=self.r2, r2=self.r1)

    def power_ratio(self, i: int) -> int:
        """Residue a^i b^(-i) modulo q, for any integer i"""
        base = self.r1 if i >= 0 else self.r2
        return pow(base, abs(i), self.q) if self.q > 1 else 0


def require_race_modulus(q: int) -> ModulusContext:
    if q < 3:
        raise ValueError(f"Prime races need a modulus q >= 3, got {q}")
    ctx = modulus_context(q)
    if ctx.is_twice_odd:
        logger.warning(
            f"Modulus {q} is twice an odd number; the race is the same as modulo {q // 2}"
        )
    return ctx


def residue_class_rating_membership(r: Fraction, s: Fraction, q: int) -> bool:
    """Whether q lies in the admissible family Q(r, s)

    The family consists of the moduli q for which r + s*q is an integer that is
    a nonsquare reduced residue modulo q.
    """
    value = Fraction(r) + Fraction(s) * q
    if value.denominator != 1:
        return False
    a = value.numerator
    if gcd(a, q) != 1:
        return False
    return not is_square_mod(q, a)


def prime_delta(q: int, a: int) -> float:
    """Closed form of the bias functional Delta(q;a,1) for prime q"""
    a = a % q
    a_inv = inverse_mod(a, q)
    return (
        iota(q, -a) * log(2)
        + von_mangoldt(a) / a
        + von_mangoldt(a_inv) / a_inv
        + 2 * log(q) / (q * (q - 1))
    )
