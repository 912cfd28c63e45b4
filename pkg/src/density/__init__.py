"""
Logarithmic densities of two-way prime races
"""

from .result import (
    DensityResult,
    choose_method,
    normalized_plot_coords,
    normalized_plot_inverse,
    require_biased_pair,
    symmetric_result,
)
from .bessel import bessel_log_coefficient, bessel_log_coeffs
from .characteristic import CharacteristicFunction, W_n_from_zeros, phi_product
from .erf_bounds import delta_erf_bounds, erf_lemma_error, gaussian_density
from .series import (
    SeriesCoefficients,
    delta_order2_arithmetic,
    delta_series,
    double_factorial,
    remainder_R_tilde,
    s_coeffs,
)
from .quadrature import adaptive_integral, delta_NR, delta_zeros_quadrature, quadratic_character

__all__ = [
    'DensityResult',
    'choose_method',
    'normalized_plot_coords',
    'normalized_plot_inverse',
    'require_biased_pair',
    'symmetric_result',
    'bessel_log_coefficient',
    'bessel_log_coeffs',
    'CharacteristicFunction',
    'W_n_from_zeros',
    'phi_product',
    'delta_erf_bounds',
    'erf_lemma_error',
    'gaussian_density',
    'SeriesCoefficients',
    'delta_order2_arithmetic',
    'delta_series',
    'double_factorial',
    'remainder_R_tilde',
    's_coeffs',
    'adaptive_integral',
    'delta_NR',
    'delta_zeros_quadrature',
    'quadratic_character',
]
