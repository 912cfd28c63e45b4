"""Dirichlet L-functions and their derivatives at s = 1.

L(s, chi) = q^(-s) sum_a chi(a) zeta(s, a/q), and near s = 1 the Hurwitz zeta
function expands as 1/(s-1) + sum_n (-1)^n gamma_n(x) (s-1)^n / n!.  The pole
cancels in the character sum, so the derivatives of L at 1 follow from the
generalized Stieltjes constants gamma_0, gamma_1, gamma_2 at the points a/q.
Those constants are computed by Euler-Maclaurin summation.
"""

from typing import Dict, Tuple
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, log, pi
import logging

import mpmath
import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import bernoulli

from ..arithmetic.modulus import EULER_GAMMA
from ..characters.dirichlet import DirichletCharacter, character_group
from ..errors import PrecisionError

logger = logging.getLogger(__name__)

EM_CUTOFF = 24
EM_TERMS = 14
DEFAULT_TARGET = 1e-12


@dataclass(frozen=True)
class LValueBundle:
    """L(1, chi*), L'(1, chi*) and L''(1, chi*) for a primitive character"""
    modulus: int
    label: int
    L: complex
    dL: complex
    d2L: complex
    error: float

    @property
    def log_derivative(self) -> complex:
        return self.dL / self.L

    @property
    def second_log_derivative(self) -> complex:
        """Second derivative of log L at s = 1"""
        ratio = self.dL / self.L
        return self.d2L / self.L - ratio * ratio

    def conjugate(self) -> "LValueBundle":
        label = pow(self.label, -1, self.modulus)
        return LValueBundle(
            modulus=self.modulus,
            label=label,
            L=self.L.conjugate(),
            dL=self.dL.conjugate(),
            d2L=self.d2L.conjugate(),
            error=self.error,
        )


@lru_cache(maxsize=8)
def _bernoulli_ratios(terms: int) -> np.ndarray:
    """B_2j / (2j)! for j = 1..terms"""
    numbers = bernoulli(2 * terms)
    return np.array([numbers[2 * j] / factorial(2 * j) for j in range(1, terms + 1)])


@lru_cache(maxsize=8)
def _derivative_polynomials(n: int, count: int) -> Tuple[Polynomial, ...]:
    """P_k with (d/dt)^k (log^n t / t) = t^(-1-k) P_k(log t)"""
    polys = [Polynomial([0] * n + [1])]
    for k in range(count):
        current = polys[-1]
        polys.append(current.deriv() - (1 + k) * current)
    return tuple(polys)


def generalized_stieltjes(
    n: int,
    x: np.ndarray,
    cutoff: int = EM_CUTOFF,
    terms: int = EM_TERMS
) -> Tuple[np.ndarray, np.ndarray]:
    """Generalized Stieltjes constants gamma_n(x) for 0 < x <= 1

    Args:
        n: Order of the constant
        x: Points in (0, 1]
        cutoff: Number of terms summed directly before Euler-Maclaurin
        terms: Number of Bernoulli correction terms

    Returns:
        Tuple of (values, remainder bounds)
    """
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    t = np.arange(cutoff, dtype=np.float64)[:, None] + x[None, :]
    log_t = np.log(t)
    head_terms = log_t ** n / t
    head = head_terms.sum(axis=0)

    tail_point = cutoff + x
    log_tail = np.log(tail_point)
    values = head - log_tail ** (n + 1) / (n + 1) + log_tail ** n / tail_point / 2

    polys = _derivative_polynomials(n, 2 * terms + 1)
    ratios = _bernoulli_ratios(terms + 1)
    for j in range(1, terms + 1):
        derivative = tail_point ** (-2 * j) * polys[2 * j - 1](log_tail)
        values = values - ratios[j - 1] * derivative

    # First omitted correction, doubled, plus summation roundoff
    omitted = np.abs(ratios[terms] * tail_point ** (-2 * terms - 2) * polys[2 * terms + 1](log_tail))
    roundoff = 4 * np.finfo(np.float64).eps * np.abs(head_terms).sum(axis=0)
    return values, 2 * omitted + roundoff


@lru_cache(maxsize=128)
def _stieltjes_table(q: int) -> Tuple[np.ndarray, np.ndarray]:
    """gamma_0, gamma_1, gamma_2 at a/q for a = 1..q, with remainder bounds"""
    x = np.arange(1, q + 1, dtype=np.float64) / q
    rows = [generalized_stieltjes(n, x) for n in range(3)]
    return np.vstack([r[0] for r in rows]), np.vstack([r[1] for r in rows])


def _require_primitive(chi: DirichletCharacter) -> None:
    if chi.is_principal:
        raise ValueError(f"Principal character {chi.name} has a pole at s = 1")
    if not chi.is_primitive:
        raise ValueError(f"Character {chi.name} is not primitive (conductor {chi.conductor})")


def L_derivatives_at_1(
    chi: DirichletCharacter,
    method: str = "euler_maclaurin",
    target: float = DEFAULT_TARGET
) -> LValueBundle:
    """L(1, chi), L'(1, chi), L''(1, chi) for a primitive nonprincipal character

    Args:
        chi: Primitive character
        method: 'euler_maclaurin' (vectorised Stieltjes constants) or 'mpmath'
        target: Largest acceptable absolute error

    Returns:
        LValueBundle with the accumulated error bound
    """
    _require_primitive(chi)
    q = chi.modulus
    values = chi.values()

    if method == "mpmath":
        with mpmath.workdps(25):
            period = [mpmath.mpc(v.real, v.imag) for v in values]
            result = [complex(mpmath.dirichlet(1, period, k)) for k in range(3)]
        return LValueBundle(q, chi.label, result[0], result[1], result[2], 1e-15)
    if method != "euler_maclaurin":
        raise ValueError(f"Unknown L-value method {method}")

    gammas, remainders = _stieltjes_table(q)
    weights = values[np.arange(1, q + 1) % q]
    G = gammas @ weights
    G_error = remainders @ np.abs(weights)
    log_q = log(q)

    L = G[0] / q
    dL = (-G[1] - log_q * G[0]) / q
    d2L = (G[2] + 2 * log_q * G[1] + log_q ** 2 * G[0]) / q
    error = float((G_error[2] + 2 * log_q * G_error[1] + log_q ** 2 * G_error[0]) / q)

    if error > target:
        raise PrecisionError(f"L-values of {chi.name} reached only {error:.2e} (target {target:.2e})")
    return LValueBundle(q, chi.label, complex(L), complex(dL), complex(d2L), error)


_bundle_cache: Dict[Tuple[int, int], LValueBundle] = {}


def lvalue_bundle(chi: DirichletCharacter) -> LValueBundle:
    """Cached L-values of the primitive character inducing chi"""
    primitive = character_group(chi.modulus).primitive(chi)
    key = (primitive.modulus, primitive.label)
    if key not in _bundle_cache:
        _bundle_cache[key] = L_derivatives_at_1(primitive)
    return _bundle_cache[key]


def log_derivative_at_1(chi: DirichletCharacter) -> complex:
    """L'/L(1, chi) for any nonprincipal chi, including imprimitive ones

    Each prime p dividing q but not the conductor contributes the Euler factor
    term chi*(p) log p / (p - chi*(p)).
    """
    if chi.is_principal:
        raise ValueError(f"Principal character {chi.name} has a pole at s = 1")
    primitive = character_group(chi.modulus).primitive(chi)
    value = lvalue_bundle(chi).log_derivative
    for p, _ in character_group(chi.modulus).context.factors:
        if primitive.modulus % p == 0:
            continue
        chi_p = primitive.value(p)
        value += chi_p * log(p) / (p - chi_p)
    return value


def b_chi_closed(chi: DirichletCharacter) -> float:
    """Sum of 1/(1/4 + gamma^2) over all zeros of L(s, chi*), assuming GRH

    log(q*/pi) - gamma_0 - (1 + chi(-1)) log 2 + 2 Re L'/L(1, chi*)
    """
    if chi.is_principal:
        raise ValueError(f"b(chi) is not defined for the principal character {chi.name}")
    conductor = chi.conductor
    bundle = lvalue_bundle(chi)
    return (
        log(conductor / pi)
        - EULER_GAMMA
        - (1 + chi.parity) * log(2)
        + 2 * bundle.log_derivative.real
    )


@dataclass(frozen=True)
class LogDerivativeTable:
    """Log-derivatives at s = 1 of the primitive L-functions behind each character mod q

    Rows follow the label order of the character group; the principal row is zero.
    """
    q: int
    first: np.ndarray
    second: np.ndarray
    first_error: np.ndarray
    second_error: np.ndarray


@lru_cache(maxsize=32)
def log_derivative_table(q: int) -> LogDerivativeTable:
    """(log L)'(1, chi*) and (log L)''(1, chi*) for every character modulo q"""
    group = character_group(q)
    size = len(group)
    first = np.zeros(size, dtype=np.complex128)
    second = np.zeros(size, dtype=np.complex128)
    first_error = np.zeros(size)
    second_error = np.zeros(size)
    for chi in group:
        if chi.is_principal:
            continue
        bundle = lvalue_bundle(chi)
        i = chi.index
        first[i] = bundle.log_derivative
        second[i] = bundle.second_log_derivative
        size_L = abs(bundle.L) - bundle.error
        first_error[i] = bundle.error * (1 + abs(first[i])) / size_L
        second_error[i] = bundle.error * (1 + abs(bundle.d2L / bundle.L)) / size_L + 2 * abs(first[i]) * first_error[i]
    logger.debug(f"Tabulated L-function log-derivatives for {size - 1} characters modulo {q}")
    return LogDerivativeTable(q, first, second, first_error, second_error)
