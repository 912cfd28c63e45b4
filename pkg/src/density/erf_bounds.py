"""Certified enclosure of delta(q;a,b) for races with large variance.

On |x| <= kappa = min(pi/rho, V^(-1/4)) the integrand sin(rho x)/x is
nonnegative and log Phi(x) is squeezed between -Vx^2/2 - Ux^4 - 15.816Ux^6
and -Vx^2/2 - Ux^4, so the two Gaussian-type integrals bracket the main
part.  Y collects the range kappa <= x <= 5/24, the range beyond 200 and
the range in between.
"""

from typing import Optional, Tuple
from math import exp, pi, sqrt
import logging

import numpy as np
from scipy.integrate import quad
from scipy.special import erf

from ..arithmetic.modulus import ResiduePair, modulus_context, rho
from ..errors import MethodPreconditionError
from ..variance.variance import VarianceReport, U_second_cumulant, variance_V
from .characteristic import log_phi_bounds
from .result import ERF_MIN_VARIANCE, DensityResult, require_biased_pair

logger = logging.getLogger(__name__)

FAR_TAIL_CONSTANT = 0.03506
FAR_TAIL_DECAY = 9.08
MIDDLE_CONSTANT = 63.67
ERF_LEMMA_MIDDLE_CONSTANT = 63.68
ERF_LEMMA_QUARTIC_CONSTANT = 47.65
SMALL_INTERVAL_END = 5 / 24

_QUAD_OPTIONS = dict(epsabs=1e-15, epsrel=1e-13, limit=200)


def gaussian_density(rho_value: float, V: float) -> float:
    """1/2 + 1/2 Erf(rho / sqrt(2V))"""
    return 0.5 + 0.5 * float(erf(rho_value / sqrt(2 * V)))


def far_tail(phi: int) -> float:
    return FAR_TAIL_CONSTANT * exp(-FAR_TAIL_DECAY * phi) / phi


def require_erf_variance(q: int, pair: ResiduePair, V: float) -> None:
    if V < ERF_MIN_VARIANCE:
        raise MethodPreconditionError(
            f"V({q};{pair.a},{pair.b}) = {V:.3f} is below {ERF_MIN_VARIANCE}; use the zeros method"
        )


def Y_remainder(q: int, V: float, U: float) -> Tuple[float, float]:
    """Y(q;a,b) and the quadrature error of its integral"""
    r = rho(q)
    phi = modulus_context(q).phi
    kappa = min(pi / r, V ** -0.25)
    integral, error = quad(lambda x: exp(log_phi_bounds(V, U, x)[1]), kappa, SMALL_INTERVAL_END, **_QUAD_OPTIONS)
    middle = MIDDLE_CONSTANT * r * exp(-25 * V / 1152 - SMALL_INTERVAL_END ** 4 * U)
    return r / pi * integral + far_tail(phi) + middle, r / pi * error


def delta_erf_bounds(
    q: int,
    pair: ResiduePair,
    variance: Optional[VarianceReport] = None,
    U: Optional[float] = None
) -> DensityResult:
    """Certified [lower, upper] for delta(q;a,b) when V(q;a,b) >= 531

    Args:
        q: Modulus
        pair: a nonsquare, b square
        variance: Precomputed variance report
        U: Precomputed second cumulant U = W_2 V

    Returns:
        DensityResult with method 'erf_bounds' and value at the midpoint
    """
    require_biased_pair(q, pair)
    report = variance or variance_V(q, pair)
    V = report.V
    require_erf_variance(q, pair, V)
    U = U_second_cumulant(q, pair) if U is None else U

    r = rho(q)
    kappa = min(pi / r, V ** -0.25)
    # sin(rho x)/x >= 0 on [0, kappa], so a larger V lowers the integral
    V_low = V - report.error_bound
    V_high = V + report.error_bound

    kernel = lambda x: r * float(np.sinc(r * x / pi))
    lower_integral, lower_error = quad(
        lambda x: kernel(x) * exp(log_phi_bounds(V_high, U, x)[0]), 0.0, kappa, **_QUAD_OPTIONS
    )
    upper_integral, upper_error = quad(
        lambda x: kernel(x) * exp(log_phi_bounds(V_low, U, x)[1]), 0.0, kappa, **_QUAD_OPTIONS
    )
    Y, Y_error = Y_remainder(q, V_low, U)

    slack = (lower_error + upper_error) / pi + Y_error
    lower = 0.5 + lower_integral / pi - Y - slack
    upper = 0.5 + upper_integral / pi + Y + slack
    value = (lower + upper) / 2
    budget = {
        "Y": Y,
        "sextic": (upper_integral - lower_integral) / (2 * pi),
        "quadrature": slack,
    }
    logger.debug(f"Erf bounds for {q};{pair.a},{pair.b}: [{lower:.12f}, {upper:.12f}] with V={V:.6f}, U={U:.6f}")
    return DensityResult(q, pair.a, pair.b, value, lower, upper, "erf_bounds", budget)


def erf_lemma_error(q: int, V: float) -> float:
    """Error of the plain Erf main term: 47.65 rho/V^(3/2) + far tail + 63.68 rho e^(-sqrt(V)/2)"""
    r = rho(q)
    phi = modulus_context(q).phi
    return (
        ERF_LEMMA_QUARTIC_CONSTANT * r / V ** 1.5
        + far_tail(phi)
        + ERF_LEMMA_MIDDLE_CONSTANT * r * exp(-sqrt(V) / 2)
    )
