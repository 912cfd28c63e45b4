"""
Explicit inequalities for prime-race variances and densities
"""

from .explicit import (
    M_star_deviation_bound,
    H0_bounds,
    composite_variance_bounds,
    density_theorem_bound,
    erf_main_term,
    lowest_zero_lift_limit,
    lowest_zero_variance_lift,
    prime_divisor_log_sum_bound,
    prime_variance_bounds,
    rho_upper_bound,
    zeros_near_height_bound,
)

__all__ = [
    'M_star_deviation_bound',
    'H0_bounds',
    'composite_variance_bounds',
    'density_theorem_bound',
    'erf_main_term',
    'lowest_zero_lift_limit',
    'lowest_zero_variance_lift',
    'prime_divisor_log_sum_bound',
    'prime_variance_bounds',
    'rho_upper_bound',
    'zeros_near_height_bound',
]
