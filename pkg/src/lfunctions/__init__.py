"""
Dirichlet L-functions: values at s = 1, smoothed prime sums, the critical
line, zero finding and sums over zeros.
"""

from .values import (
    LValueBundle,
    L_derivatives_at_1,
    lvalue_bundle,
    log_derivative_at_1,
    LogDerivativeTable,
    log_derivative_table,
    b_chi_closed,
    generalized_stieltjes,
)
from .smoothed import logderiv_smoothed, residue_class_smoothed_sum, smoothed_sum_bound
from .critical_line import CriticalLineEvaluator, completed_rotation, gauss_sum, root_number
from .zeros import (
    ZeroList,
    N_T_bounds,
    zero_count_lower,
    zero_count_upper,
    find_zero_pair,
    find_zeros,
    load_zeros,
    save_zeros,
    zeros_filename,
)
from .zero_sums import ZeroSum, b_n_from_zeros, inverse_power_sum

__all__ = [
    'LValueBundle',
    'L_derivatives_at_1',
    'lvalue_bundle',
    'log_derivative_at_1',
    'LogDerivativeTable',
    'log_derivative_table',
    'b_chi_closed',
    'generalized_stieltjes',
    'logderiv_smoothed',
    'residue_class_smoothed_sum',
    'smoothed_sum_bound',
    'CriticalLineEvaluator',
    'completed_rotation',
    'gauss_sum',
    'root_number',
    'ZeroList',
    'N_T_bounds',
    'zero_count_lower',
    'zero_count_upper',
    'find_zero_pair',
    'find_zeros',
    'load_zeros',
    'save_zeros',
    'zeros_filename',
    'ZeroSum',
    'b_n_from_zeros',
    'inverse_power_sum',
]
