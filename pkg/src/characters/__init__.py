"""Dirichlet characters and orthogonality sums"""

from .dirichlet import (
    CharacterGroup,
    DirichletCharacter,
    GeneratorComponent,
    character_group,
    conductor_and_primitive,
    enumerate_characters,
)
from .sums import (
    character_sum,
    log_qstar_character_sum,
    log_qstar_weighted_sum,
    prime_power_defect_sum,
    weighted_char_sum,
)

__all__ = [
    'CharacterGroup',
    'DirichletCharacter',
    'GeneratorComponent',
    'character_group',
    'conductor_and_primitive',
    'enumerate_characters',
    'character_sum',
    'log_qstar_character_sum',
    'log_qstar_weighted_sum',
    'prime_power_defect_sum',
    'weighted_char_sum',
]
