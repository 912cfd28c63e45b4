"""Prime-power corrections for imprimitive characters.

For a prime p dividing q exactly p^nu times, the exponents e(q;p,r) record
when p^e falls into the class of r^(-1) modulo q/p^nu.  They feed the
corrections H, H0 and the higher-order H_{n,j} that convert sums over
imprimitive characters into sums over the primitive characters inducing them.
"""

from typing import Tuple, Union
from math import comb, factorial, inf, log
import logging

from sympy import n_order
from sympy.functions.combinatorial.numbers import stirling

from .modulus import ResiduePair, inverse_mod, modulus_context

logger = logging.getLogger(__name__)

Exponent = Union[int, float]


def _cofactor(q: int, p: int) -> Tuple[int, int]:
    ctx = modulus_context(q)
    p_nu = ctx.prime_power(p)
    return p_nu, q // p_nu


def e_qpr(q: int, p: int, r: int) -> Exponent:
    """Least e >= 1 with p^e = r^(-1) (mod q/p^nu), or infinity

    Args:
        q: Modulus
        p: Prime dividing q
        r: Reduced residue modulo q

    Returns:
        The exponent; 1 when q is a power of p, math.inf when r^(-1) is not
        a power of p modulo q/p^nu
    """
    if q % p:
        raise ValueError(f"{p} does not divide {q}")
    modulus_context(q).check_reduced(r)
    _, m = _cofactor(q, p)
    if m == 1:
        return 1
    target = inverse_mod(r % m, m)
    order = n_order(p, m)
    power = 1
    for e in range(1, order + 1):
        power = power * p % m
        if power == target:
            return e
    return inf


def h(q: int, p: int, r: int) -> float:
    """(1/phi(p^nu)) log p / p^e(q;p,r), zero when the exponent is infinite"""
    e = e_qpr(q, p, r)
    if e == inf:
        return 0.0
    p_nu, _ = _cofactor(q, p)
    return log(p) / (p_nu - p_nu // p) * float(p) ** (-e)


def h0(q: int, p: int, r: int) -> float:
    """h(q;p,r) summed over the whole progression of admissible exponents"""
    base = h(q, p, r)
    if base == 0.0:
        return 0.0
    period = e_qpr(q, p, 1)
    return base / (1.0 - float(p) ** (-period))


def H_and_H0(q: int, pair: ResiduePair) -> Tuple[float, float]:
    """The corrections H(q;a,b) and H0(q;a,b)

    Args:
        q: Modulus
        pair: Reduced residues a, b modulo q

    Returns:
        Tuple of (H, H0)
    """
    H = 0.0
    H0 = 0.0
    for p in modulus_context(q).primes:
        H += h(q, p, pair.r1) + h(q, p, pair.r2)
        H0 += h0(q, p, pair.r1) + h0(q, p, pair.r2) - 2 * h0(q, p, 1)
    return H, H0


def progression_power_sum(p: int, start: int, period: int, m: int) -> float:
    """Sum of e^m / p^e over e >= 1 with e = start (mod period)

    Uses the closed form through Stirling numbers of the second kind;
    start is taken as the least positive member of the progression.

    Args:
        p: Prime base
        start: Least exponent in the progression (1 <= start <= period)
        period: Common difference of the progression
        m: Power of e in the numerator

    Returns:
        The value of the series
    """
    if not 1 <= start <= period:
        raise ValueError(f"Start {start} must lie in [1, {period}]")
    ratio = 1 / (p ** period - 1)
    total = 0.0
    for g in range(m + 1):
        inner = sum(
            int(stirling(g, ell)) * factorial(ell) * ratio ** ell
            for ell in range(g + 1)
        )
        total += comb(m, g) * period ** g * start ** (m - g) * inner
    return total * float(p) ** (-start) / (1.0 - float(p) ** (-period))


def H_nj(q: int, pair: ResiduePair, n: int, j: int) -> float:
    """The prime-power correction H_{n,j}(q;a,b)

    (-1)^j sum_{p^nu || q} (log p)^j / phi(p^nu)
        sum_{|i| <= n} (-1)^i C(2n, n+i) sum_{e: a^i b^-i p^e = 1} e^(j-1) / p^e
    """
    if not 1 <= j <= n:
        raise ValueError(f"Need 1 <= j <= n, got n={n}, j={j}")
    total = 0.0
    for p in modulus_context(q).primes:
        p_nu, _ = _cofactor(q, p)
        period = e_qpr(q, p, 1)
        inner = 0.0
        for i in range(-n, n + 1):
            start = e_qpr(q, p, pair.power_ratio(i))
            if start == inf:
                continue
            weight = (-1) ** i * comb(2 * n, n + i)
            inner += weight * progression_power_sum(p, start, period, j - 1)
        total += log(p) ** j / (p_nu - p_nu // p) * inner
    return (-1) ** j * total
