"""The characteristic function of the limiting race distribution.

Phi(x) is the product over characters chi and positive zero ordinates
gamma of J0(2|chi(a) - chi(b)| x / sqrt(1/4 + gamma^2)).  Only finitely
many zeros are ever known, so the missing ones are replaced by the
Gaussian factor exp(-x^2 (V - V_T) / 2), where V_T is the part of the
variance carried by the known zeros.
"""

from typing import Mapping, Optional, Tuple
from math import pi, sqrt
import logging

import numpy as np

from ..arithmetic.modulus import ResiduePair
from ..characters.dirichlet import DirichletCharacter, character_group
from ..errors import InsufficientZeroDataError
from ..lfunctions.values import b_chi_closed
from ..lfunctions.zero_sums import b_n_from_zeros, tail_bound
from ..lfunctions.zeros import ZeroList
from ..variance.variance import variance_V
from .bessel import bessel_log_coefficient, log_abs_j0

logger = logging.getLogger(__name__)

TAIL_MODES = ("closed", "none")

# Product entries evaluated per block
_BLOCK_ENTRIES = 1 << 22

# |J0(z)| <= sqrt(2 / (pi z)) once z exceeds this
_ENVELOPE_START = 2 / pi


def _missing_labels(group, weights: np.ndarray, zeros: Mapping[int, ZeroList]) -> list:
    return [chi.label for chi in group if weights[chi.index] > 0 and chi.label not in zeros]


class CharacteristicFunction:
    """Truncated product of Bessel factors with a Gaussian tail correction"""

    def __init__(self, scales: np.ndarray, tail_variance: float = 0.0, name: str = ""):
        """Set up the product

        Args:
            scales: One coefficient c per Bessel factor J0(c x)
            tail_variance: Variance not carried by the factors; contributes
                exp(-tail_variance x^2 / 2)
            name: Label used in log messages
        """
        scales = np.asarray(scales, dtype=np.float64)
        if np.any(scales <= 0):
            raise ValueError("Bessel scales must be positive")
        self.scales = np.sort(scales)[::-1]
        self.tail_variance = max(float(tail_variance), 0.0)
        self.name = name
        logger.debug(
            f"Characteristic function {name}: {len(self.scales)} factors, "
            f"tail variance {self.tail_variance:.3e}"
        )

    @classmethod
    def for_race(
        cls,
        q: int,
        pair: ResiduePair,
        zeros: Mapping[int, ZeroList],
        V: Optional[float] = None,
        tail_mode: str = "closed"
    ) -> "CharacteristicFunction":
        """Phi for the race between a and b modulo q

        Args:
            q: Modulus
            pair: Distinct reduced residues
            zeros: Positive ordinates keyed by character label
            V: Variance of the race (computed from L-values when omitted)
            tail_mode: 'closed' compensates the missing zeros, 'none' drops them
        """
        if tail_mode not in TAIL_MODES:
            raise ValueError(f"Unknown tail mode {tail_mode}")
        pair.require_distinct()
        group = character_group(q)
        weights = group.race_weights(pair.a, pair.b)
        missing = _missing_labels(group, weights, zeros)
        if missing:
            raise InsufficientZeroDataError(f"No zeros for characters {missing} modulo {q}")

        scales = []
        truncated_variance = 0.0
        for chi in group:
            w = weights[chi.index]
            if w <= 0:
                continue
            gammas = zeros[chi.label].ordinates
            inverse = 1.0 / (0.25 + gammas ** 2)
            scales.append(2 * sqrt(w) * np.sqrt(inverse))
            truncated_variance += 2 * w * float(np.sum(inverse[::-1]))

        tail = 0.0
        if tail_mode == "closed":
            V = variance_V(q, pair).V if V is None else V
            tail = V - truncated_variance
            if tail < 0:
                logger.warning(f"Known zeros modulo {q} carry more than the variance by {-tail:.3e}")
        scales = np.concatenate(scales) if scales else np.empty(0)
        return cls(scales, tail, name=f"{q};{pair.a},{pair.b}")

    @classmethod
    def for_character(
        cls,
        chi: DirichletCharacter,
        zeros: ZeroList,
        tail_mode: str = "closed"
    ) -> "CharacteristicFunction":
        """Product of J0(2x / sqrt(1/4 + gamma^2)) over the zeros of one real character"""
        if tail_mode not in TAIL_MODES:
            raise ValueError(f"Unknown tail mode {tail_mode}")
        if not chi.is_real or chi.is_principal:
            raise ValueError(f"Character {chi.name} must be real and nonprincipal")
        inverse = 1.0 / (0.25 + zeros.ordinates ** 2)
        tail = 0.0
        if tail_mode == "closed":
            # the factor J0(2x/...) has variance 2/(1/4 + gamma^2), and b(chi) = 2 S+
            tail = b_chi_closed(chi) - 2 * float(np.sum(inverse[::-1]))
        return cls(2 * np.sqrt(inverse), tail, name=chi.name)

    def __len__(self) -> int:
        return len(self.scales)

    def __call__(self, x) -> np.ndarray:
        """Phi at the points x"""
        x = np.atleast_1d(np.asarray(x, dtype=np.float64))
        result = np.empty_like(x)
        step = max(1, _BLOCK_ENTRIES // max(len(self.scales), 1))
        for start in range(0, len(x), step):
            block = x[start:start + step]
            if len(self.scales):
                arguments = np.abs(block)[:, None] * self.scales[None, :]
                logs, negative = log_abs_j0(arguments)
                total = logs.sum(axis=1)
                sign = np.where(negative.sum(axis=1) % 2, -1.0, 1.0)
            else:
                total = np.zeros_like(block)
                sign = np.ones_like(block)
            total -= self.tail_variance * block ** 2 / 2
            result[start:start + step] = sign * np.exp(total)
        return result

    def log_envelope(self, x: float) -> Tuple[float, int]:
        """log of an upper bound for |Phi(x)|, and the number of decaying factors

        Uses |J0(z)| <= sqrt(2 / (pi z)) for the factors with z >= 2/pi.
        """
        z = self.scales * abs(x)
        active = z >= _ENVELOPE_START
        value = 0.5 * float(np.sum(np.log(_ENVELOPE_START / z[active])))
        value -= self.tail_variance * x * x / 2
        return value, int(np.count_nonzero(active))

    def truncation_bound(self, C: float) -> float:
        """Bound for (1/pi) times the integral of |sin(rho x)/x Phi(x)| over x > C"""
        log_value, active = self.log_envelope(C)
        if active == 0:
            return float("inf")
        # |Phi(x)| <= envelope(C) (C/x)^(active/2) beyond C
        return 2 * float(np.exp(log_value)) / (pi * active)


def phi_product(
    q: int,
    pair: ResiduePair,
    x,
    zeros: Mapping[int, ZeroList],
    tail_mode: str = "closed",
    V: Optional[float] = None
) -> np.ndarray:
    """Phi_{q;a,b}(x) from zero data

    Args:
        q: Modulus
        pair: Distinct reduced residues
        x: Points of evaluation
        zeros: Positive ordinates keyed by character label
        tail_mode: 'closed' or 'none'
        V: Variance of the race, when already known

    Returns:
        Array of Phi values
    """
    return CharacteristicFunction.for_race(q, pair, zeros, V=V, tail_mode=tail_mode)(x)


def W_n_from_zeros(
    q: int,
    pair: ResiduePair,
    n: int,
    zeros: Mapping[int, ZeroList],
    V: Optional[float] = None,
    tail_mode: str = "bound"
) -> Tuple[float, float]:
    """W_n(q;a,b) = 4^n |lambda_{2n}| / V times the weighted zero sums

    Args:
        q: Modulus
        pair: Distinct reduced residues
        n: Cumulant index (W_1 = 1/2 exactly)
        zeros: Positive ordinates keyed by character label
        V: Variance of the race (from L-values when omitted)
        tail_mode: Tail handling passed to the zero sums

    Returns:
        Tuple of (value, bound on the omitted zeros' contribution)
    """
    if n < 1:
        raise ValueError(f"Cumulant index must be positive, got {n}")
    pair.require_distinct()
    group = character_group(q)
    weights = group.race_weights(pair.a, pair.b, n=n)
    missing = _missing_labels(group, weights, zeros)
    if missing:
        raise InsufficientZeroDataError(f"No zeros for characters {missing} modulo {q}")
    V = variance_V(q, pair).V if V is None else V

    total = 0.0
    error = 0.0
    for chi in group:
        w = weights[chi.index]
        if w <= 0:
            continue
        conjugate = None if chi.is_real else zeros[chi.conjugate_label]
        zero_sum = b_n_from_zeros(zeros[chi.label], n, conjugate=conjugate, tail_mode=tail_mode)
        total += w * zero_sum.value
        error += w * zero_sum.tail_bound

    # each character and its conjugate share a weight, so the sum over chi
    # of b_n(chi) double counts the positive ordinates
    scale = 4 ** n * abs(float(bessel_log_coefficient(2 * n))) / (2 * V)
    logger.debug(f"W_{n}({q};{pair.a},{pair.b}) = {scale * total:.12f}, tail {scale * error:.3e}")
    return scale * total, scale * error


def quartic_tail_bound(
    q: int,
    pair: ResiduePair,
    zeros: Mapping[int, ZeroList]
) -> float:
    """Bound for the x^4 coefficient of log Phi lost by truncating the zeros"""
    group = character_group(q)
    weights = group.race_weights(pair.a, pair.b, n=2)
    total = 0.0
    for chi in group:
        w = weights[chi.index]
        if w <= 0:
            continue
        own = zeros[chi.label]
        total += w * tail_bound(own.conductor, own.height, 2, len(own)) / 2
    return 16 * abs(float(bessel_log_coefficient(4))) * total


def envelope_cutoff(phi_function: CharacteristicFunction, target: float, start: float = 4.0) -> Tuple[float, float]:
    """Smallest C on a geometric grid whose truncation bound meets the target"""
    C = start
    for _ in range(200):
        bound = phi_function.truncation_bound(C)
        if bound < target:
            return C, bound
        C *= 1.25
    return C, phi_function.truncation_bound(C)


def log_phi_bounds(V: float, U: float, x: float) -> Tuple[float, float]:
    """Lower and upper bounds for log Phi(x) valid for |x| < 3/10"""
    upper = -V * x * x / 2 - U * x ** 4
    return upper - 15.816 * U * x ** 6, upper
