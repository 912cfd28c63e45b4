from typing import Callable, Dict, Mapping, Optional, Tuple
from math import exp, pi, sqrt
import logging

import numpy as np

from ..arithmetic.modulus import ResiduePair, modulus_context, rho
from ..characters.dirichlet import DirichletCharacter, character_group
from ..errors import PrecisionError
from ..lfunctions.values import b_chi_closed
from ..lfunctions.zeros import ZeroList
from ..variance.variance import VarianceReport, variance_V
from .characteristic import CharacteristicFunction, envelope_cutoff, quartic_tail_bound
from .erf_bounds import gaussian_density
from .result import DensityResult, enclosure, require_biased_pair

logger = logging.getLogger(__name__)

DEFAULT_TARGET = 1e-10
GAUSS_ORDER = 20
PANEL_WIDTH = 0.5
MAX_BISECTIONS = 24

# |Phi(t)| <= exp(-PHI_DECAY phi(q) t) for t >= PHI_DECAY_START
PHI_DECAY = 0.0454
PHI_DECAY_START = 200.0

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)


def _gauss_panels(f: Callable[[np.ndarray], np.ndarray], left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Gauss-Legendre estimate on every panel [left_i, right_i] from one batched call"""
    half = (right - left) / 2
    centre = (right + left) / 2
    points = centre[:, None] + half[:, None] * _NODES[None, :]
    values = f(points.ravel()).reshape(points.shape)
    return half * (values @ _WEIGHTS)


def adaptive_integral(
    f: Callable[[np.ndarray], np.ndarray],
    start: float,
    stop: float,
    tolerance: float,
    width: float = PANEL_WIDTH
) -> Tuple[float, float]:
    """Integral of f over [start, stop] by adaptively bisected Gauss-Legendre panels

    A panel is accepted once its estimate agrees with the sum over its two
    halves to within tolerance times its share of the interval.

    Args:
        f: Vectorised integrand
        start: Left end
        stop: Right end
        tolerance: Target absolute error
        width: Initial panel width

    Returns:
        Tuple of (integral, estimated error)
    """
    if stop <= start:
        return 0.0, 0.0
    count = max(1, int(np.ceil((stop - start) / width)))
    edges = np.linspace(start, stop, count + 1)
    left, right = edges[:-1], edges[1:]
    coarse = _gauss_panels(f, left, right)
    length = stop - start

    total = 0.0
    error = 0.0
    for depth in range(MAX_BISECTIONS):
        middle = (left + right) / 2
        halves = _gauss_panels(f, np.concatenate([left, middle]), np.concatenate([middle, right]))
        fine = halves[:len(left)] + halves[len(left):]
        difference = np.abs(fine - coarse)
        done = difference <= tolerance * (right - left) / length
        total += float(np.sum(fine[done]))
        error += float(np.sum(difference[done]))
        if done.all():
            logger.debug(f"Quadrature converged after {depth + 1} bisection rounds")
            return total, error
        keep = ~done
        left = np.concatenate([left[keep], middle[keep]])
        right = np.concatenate([middle[keep], right[keep]])
        coarse = np.concatenate([halves[:len(done)][keep], halves[len(done):][keep]])
    raise PrecisionError(
        f"Quadrature on [{start}, {stop}] did not reach {tolerance:.1e}; "
        f"{len(left)} panels still unresolved"
    )


def rigorous_cutoff(phi: int, target: float) -> Tuple[float, float]:
    """Cutoff C >= 200 beyond which the race integrand contributes less than target"""
    C = PHI_DECAY_START
    bound = lambda t: exp(-PHI_DECAY * phi * t) / (pi * PHI_DECAY * phi * t)
    while bound(C) >= target:
        C *= 1.1
    return C, bound(C)


def inversion_integral(
    characteristic: CharacteristicFunction,
    rho_value: float,
    target: float,
    phi: Optional[int] = None
) -> Tuple[float, Dict[str, float]]:
    """(1/pi) times the integral over x > 0 of sin(rho x)/x Phi(x)

    Args:
        characteristic: Phi
        rho_value: Frequency of the sine
        target: Error target for the truncation and the quadrature each
        phi: phi(q) for the race decay bound, when Phi belongs to a race

    Returns:
        Tuple of (value, error budget)
    """
    C, truncation = envelope_cutoff(characteristic, target)
    if phi is not None:
        C_race, race_bound = rigorous_cutoff(phi, target)
        if C_race < C or truncation >= target:
            C, truncation = C_race, race_bound
    if truncation >= target:
        raise PrecisionError(f"No truncation point found for {characteristic.name} at target {target:.1e}")

    integrand = lambda x: rho_value * np.sinc(rho_value * x / pi) * characteristic(x)
    value, error = adaptive_integral(integrand, 0.0, C, target * pi)
    logger.debug(f"Inversion integral for {characteristic.name} on [0, {C:.2f}]")
    return value / pi, {"truncation": truncation, "quadrature": error / pi}


def delta_zeros_quadrature(
    q: int,
    pair: ResiduePair,
    zeros: Mapping[int, ZeroList],
    variance: Optional[VarianceReport] = None,
    target: float = DEFAULT_TARGET,
    tail_mode: str = "closed"
) -> DensityResult:
    """delta(q;a,b) by numerical inversion of the characteristic function

    Args:
        q: Modulus
        pair: a nonsquare, b square
        zeros: Positive ordinates for every character modulo q, keyed by label
        variance: Precomputed variance report
        target: Quadrature and truncation error target
        tail_mode: 'closed' or 'none' for the missing zeros

    Returns:
        DensityResult with method 'zeros_quadrature'
    """
    require_biased_pair(q, pair)
    report = variance or variance_V(q, pair)
    characteristic = CharacteristicFunction.for_race(q, pair, zeros, V=report.V, tail_mode=tail_mode)
    r = rho(q)
    integral, budget = inversion_integral(characteristic, r, target, phi=modulus_context(q).phi)

    # first neglected cumulant of the missing zeros
    quartic = quartic_tail_bound(q, pair, zeros)
    budget["zero_tail"] = 3 * r * quartic / (sqrt(2 * pi) * report.V ** 2.5)

    value = 0.5 + integral
    logger.info(f"delta({q};{pair.a},{pair.b}) = {value:.9f} from {len(characteristic)} zeros")
    return enclosure(q, pair, value, budget, "zeros_quadrature")


def quadratic_character(q: int) -> DirichletCharacter:
    """The unique real nonprincipal character modulo q, when rho(q) = 2"""
    if rho(q) != 2:
        raise ValueError(f"Residue-versus-nonresidue race needs rho(q) = 2, got rho({q}) = {rho(q)}")
    group = character_group(q)
    real = [chi for chi in group if chi.is_real and not chi.is_principal]
    return real[0]


def delta_NR(
    q: int,
    method: str = "erf",
    zeros: Optional[ZeroList] = None,
    target: float = DEFAULT_TARGET,
    constant: float = 10.0
) -> DensityResult:
    """delta(q;N,R), the race between all nonsquares and all squares

    Args:
        q: Modulus with rho(q) = 2
        method: 'erf' for the Gaussian main term, 'zeros' for the inversion
            integral over the zeros of the quadratic character
        zeros: Zero list of the quadratic character (zeros method)
        target: Quadrature error target
        constant: Heuristic constant of the erf error term

    Returns:
        DensityResult with method 'NR'
    """
    chi = quadratic_character(q)
    V = b_chi_closed(chi)

    if method == "erf":
        value = gaussian_density(2, V)
        budget = {"series": constant * 8 / V ** 1.5}
    elif method == "zeros":
        if zeros is None:
            raise ValueError(f"Zeros method for {q};N,R needs the zeros of {chi.name}")
        characteristic = CharacteristicFunction.for_character(chi, zeros)
        integral, budget = inversion_integral(characteristic, 2.0, target)
        value = 0.5 + integral
    else:
        raise ValueError(f"Unknown N,R method {method}")

    logger.info(f"delta({q};N,R) = {value:.9f} via {method}")
    return enclosure(q, None, value, budget, "NR", tag="N,R")

