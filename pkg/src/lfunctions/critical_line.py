"""Evaluation of L(1/2 + it, chi) and its real rotation Z(t).

The Dirichlet series is summed directly over n <= qM and each residue class
a modulo q contributes an Euler-Maclaurin tail for sum_{k >= M} (k + a/q)^(-s).
With M >= |t|/2 + 10 the Bernoulli corrections shrink by a factor of about
1/pi^2 per term.
"""

from typing import Dict, Tuple
from math import ceil, log, pi, sqrt
import logging

import numpy as np
from scipy.special import loggamma

from ..characters.dirichlet import DirichletCharacter
from ..errors import PrecisionError
from .values import _bernoulli_ratios

logger = logging.getLogger(__name__)

CRITICAL_TERMS = 14
# Grid points evaluated per phase-recurrence block
SCAN_BLOCK = 64
# Upper limit on complex entries held by one exact evaluation chunk
_CHUNK_ENTRIES = 1 << 22


def gauss_sum(chi: DirichletCharacter) -> complex:
    q = chi.modulus
    a = np.arange(q)
    return complex(np.sum(chi.values() * np.exp(2j * np.pi * a / q)))


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon(chi) = tau(chi) / (i^kappa sqrt(q)) for a primitive character"""
    if not chi.is_primitive or chi.is_principal:
        raise ValueError(f"Root number needs a primitive nonprincipal character, got {chi.name}")
    epsilon = gauss_sum(chi) / (1j ** chi.kappa * sqrt(chi.modulus))
    if abs(abs(epsilon) - 1.0) > 1e-10:
        raise PrecisionError(f"Root number of {chi.name} has modulus {abs(epsilon):.12f}")
    return epsilon


class CriticalLineEvaluator:
    """Evaluates L and the rotated completed function on the critical line"""

    def __init__(self, chi: DirichletCharacter, terms: int = CRITICAL_TERMS):
        """Prepare the evaluator

        Args:
            chi: Primitive nonprincipal character
            terms: Bernoulli corrections in each class tail
        """
        self.chi = chi
        self.q = chi.modulus
        self.kappa = chi.kappa
        self.values = chi.values()
        self.epsilon = root_number(chi)
        self.phase = -np.angle(self.epsilon) / 2
        self.ratios = _bernoulli_ratios(terms)
        self.log_q_over_pi = log(self.q / pi)

        # Residue classes carrying a nonzero value
        self.classes = np.flatnonzero(self.values)
        self.class_values = self.values[self.classes]
        self._terms: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}

    @staticmethod
    def cutoff(t_max: float) -> int:
        return int(ceil(abs(t_max) / 2)) + 10

    def _dirichlet_terms(self, M: int) -> Tuple[np.ndarray, np.ndarray]:
        """(chi(n) n^(-1/2), log n) for n <= qM with chi(n) != 0"""
        if M not in self._terms:
            if len(self._terms) > 4:
                self._terms.clear()
            n = np.arange(1, self.q * M + 1)
            n = n[self.values[n % self.q] != 0]
            coeff = self.values[n % self.q] / np.sqrt(n)
            self._terms[M] = (coeff, np.log(n.astype(np.float64)))
        return self._terms[M]

    def _tails(self, s: np.ndarray, M: int) -> np.ndarray:
        a = self.classes
        x = M + a / self.q
        log_N = np.log(self.q * M + a)
        s_col = s[:, None]
        base = np.exp(-s_col * log_N[None, :])
        bracket = x[None, :] / (s_col - 1) + 0.5
        rising = s_col.copy()
        for j, ratio in enumerate(self.ratios, start=1):
            bracket = bracket + ratio * rising * x[None, :] ** (1 - 2 * j)
            rising = rising * (s_col + 2 * j - 1) * (s_col + 2 * j)
        return (base * bracket) @ self.class_values

    def theta(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=np.float64)
        return t / 2 * self.log_q_over_pi + np.imag(loggamma((0.5 + self.kappa + 1j * t) / 2)) + self.phase

    def L(self, t: np.ndarray) -> np.ndarray:
        """L(1/2 + it, chi), evaluated exactly at each point"""
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        result = np.empty(len(t), dtype=np.complex128)
        if len(t) == 0:
            return result
        order = np.argsort(np.abs(t))
        width = max(1, _CHUNK_ENTRIES // (self.q * self.cutoff(np.abs(t).max())))
        for start in range(0, len(t), width):
            chunk = order[start:start + width]
            tc = t[chunk]
            M = self.cutoff(np.abs(tc).max())
            coeff, log_n = self._dirichlet_terms(M)
            main = np.exp(-1j * tc[:, None] * log_n[None, :]) @ coeff
            result[chunk] = main + self._tails(0.5 + 1j * tc, M)
        return result

    def Z(self, t: np.ndarray) -> np.ndarray:
        """Real rotation exp(i theta(t)) L(1/2 + it)"""
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        return np.real(np.exp(1j * self.theta(t)) * self.L(t))

    def scan(self, t_start: float, step: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
        """Z on an equally spaced grid using a phase recurrence per block

        Args:
            t_start: First grid point
            step: Grid spacing
            count: Number of grid points

        Returns:
            Tuple of (grid, Z values)
        """
        grid = t_start + step * np.arange(count)
        values = np.empty(count)
        for b0 in range(0, count, SCAN_BLOCK):
            block = grid[b0:b0 + SCAN_BLOCK]
            M = self.cutoff(np.abs(block).max())
            coeff, log_n = self._dirichlet_terms(M)
            current = coeff * np.exp(-1j * block[0] * log_n)
            rotate = np.exp(-1j * step * log_n)
            main = np.empty(len(block), dtype=np.complex128)
            for k in range(len(block)):
                main[k] = current.sum()
                current *= rotate
            L = main + self._tails(0.5 + 1j * block, M)
            values[b0:b0 + len(block)] = np.real(np.exp(1j * self.theta(block)) * L)
        return grid, values


def completed_rotation(chi: DirichletCharacter, t) -> np.ndarray:
    """Real-valued rotated completed L-function of a primitive character on the critical line"""
    return CriticalLineEvaluator(chi).Z(t)
