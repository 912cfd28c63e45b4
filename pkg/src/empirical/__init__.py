"""
Prime counts in progressions and finite-range race experiments
"""

from .counts import PrimeCounter, E_xqa, sieve_pi
from .experiments import (
    RaceSample,
    empirical_logdensity,
    log_grid,
    mirror_correlation,
    mirror_variance_groups,
    mirror_variance_sample,
    race_sample,
    race_tally,
)

__all__ = [
    'PrimeCounter',
    'E_xqa',
    'sieve_pi',
    'RaceSample',
    'empirical_logdensity',
    'log_grid',
    'mirror_correlation',
    'mirror_variance_groups',
    'mirror_variance_sample',
    'race_sample',
    'race_tally',
]
