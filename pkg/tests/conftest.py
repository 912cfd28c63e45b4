import pytest

from src.characters.dirichlet import character_group
from src.lfunctions.zeros import find_zeros

# Lowest height accepted by the zero sums
TEST_ZERO_HEIGHT = 100.0


def _zeros_for(q: int):
    group = character_group(q)
    return {chi.label: find_zeros(chi, TEST_ZERO_HEIGHT) for chi in group if not chi.is_principal}


@pytest.fixture(scope="session")
def zeros_q3():
    """Zeros to height 100 of the nonprincipal character modulo 3"""
    return _zeros_for(3)


@pytest.fixture(scope="session")
def zeros_q4():
    """Zeros to height 100 of the nonprincipal character modulo 4"""
    return _zeros_for(4)
