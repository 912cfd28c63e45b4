"""Exact multiplicative arithmetic modulo q"""

from .modulus import (
    EULER_GAMMA,
    ModulusContext,
    ResiduePair,
    K_q,
    c_qa,
    euler_phi,
    factorize,
    inverse_mod,
    iota,
    is_square_mod,
    lambda_over_phi,
    least_residue,
    modulus_context,
    prime_delta,
    prime_divisor_log_sum,
    require_race_modulus,
    residue_class_rating_membership,
    rho,
    script_L,
    von_mangoldt,
)
from .prime_powers import H_and_H0, H_nj, e_qpr, h, h0, progression_power_sum
from .primes import primes_up_to, von_mangoldt_table

__all__ = [
    'EULER_GAMMA',
    'ModulusContext',
    'ResiduePair',
    'K_q',
    'c_qa',
    'euler_phi',
    'factorize',
    'inverse_mod',
    'iota',
    'is_square_mod',
    'lambda_over_phi',
    'least_residue',
    'modulus_context',
    'prime_delta',
    'prime_divisor_log_sum',
    'require_race_modulus',
    'residue_class_rating_membership',
    'rho',
    'script_L',
    'von_mangoldt',
    'H_and_H0',
    'H_nj',
    'e_qpr',
    'h',
    'h0',
    'progression_power_sum',
    'primes_up_to',
    'von_mangoldt_table',
]
