"""
Variances of prime races and the arithmetic bias functional
"""

from .variance import (
    ZETA_ZERO_SUM,
    VarianceReport,
    M_star,
    U_second_cumulant,
    b_values,
    congruence_sums,
    variance_V,
    variance_plus,
    variance_plus_closed,
)
from .bias import (
    DeltaBreakdown,
    arithmetic_M_tilde,
    delta_discriminant,
    rating,
    rating_limit_residuals,
)
from .higher_order import HigherOrderTerms, M_nj, higher_order_terms, script_L_n

__all__ = [
    'ZETA_ZERO_SUM',
    'VarianceReport',
    'M_star',
    'U_second_cumulant',
    'b_values',
    'congruence_sums',
    'variance_V',
    'variance_plus',
    'variance_plus_closed',
    'DeltaBreakdown',
    'arithmetic_M_tilde',
    'delta_discriminant',
    'rating',
    'rating_limit_residuals',
    'HigherOrderTerms',
    'M_nj',
    'higher_order_terms',
    'script_L_n',
]
