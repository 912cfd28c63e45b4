"""Command-line interface for the prime-race density engine"""

from .density import compute_density, main as density_main
from .empirical import main as empirical_main
from .table import build_table, main as table_main
from .top_races import scan_top_races, main as top_main
from .zeros import find_and_save, main as zeros_main

__all__ = [
    'compute_density',
    'density_main',
    'empirical_main',
    'build_table',
    'table_main',
    'scan_top_races',
    'top_main',
    'find_and_save',
    'zeros_main'
]
