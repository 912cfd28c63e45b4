import numpy as np
import pytest

from src.arithmetic.modulus import ResiduePair, euler_phi, modulus_context, rho
from src.characters.dirichlet import character_group, conductor_and_primitive, find_character
from src.characters.sums import (
    character_sum,
    log_qstar_character_sum,
    log_qstar_weighted_sum,
    prime_power_defect_sum,
    weighted_char_sum,
)


@pytest.mark.parametrize("q", [3, 4, 8, 12, 15, 16, 24, 45, 60, 101])
def test_group_size_and_orthogonality(q):
    """Test that there are phi(q) characters and that they are orthogonal"""
    group = character_group(q)
    phi = modulus_context(q).phi
    assert len(group) == phi

    for m in [int(u) for u in modulus_context(q).reduced_residues][:8]:
        expected = phi if m % q == 1 % q else 0
        assert character_sum(group, m) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("q", [5, 8, 12, 24, 63, 420])
def test_real_characters_match_square_classes(q):
    """Test that the number of real characters equals rho(q)"""
    group = character_group(q)
    assert sum(chi.is_real for chi in group) == rho(q)


def _check_semi_orthogonality(q, exponents):
    group = character_group(q)
    ctx = modulus_context(q)
    for p in ctx.primes:
        m = q // ctx.prime_power(p)
        for r in ctx.reduced_residues:
            r = int(r)
            for e in exponents:
                # chi*(p^e) - chi(p^e) sums to phi(q/p^nu) exactly when r p^e = 1 (mod q/p^nu)
                expected = euler_phi(m) if r * pow(p, e, m) % m == 1 % m else 0
                assert abs(prime_power_defect_sum(group, r, p, e) - expected) < 1e-9, (q, p, r, e)


@pytest.mark.parametrize("q", [7, 12, 20, 24, 45, 63, 100])
def test_semi_orthogonality(q):
    """Test the sums of chi(r)(chi*(p^e) - chi(p^e)) over all characters"""
    _check_semi_orthogonality(q, (1, 2, 3))


@pytest.mark.slow
def test_semi_orthogonality_to_200():
    """Test the semi-orthogonality sums for every modulus up to 200"""
    for q in range(2, 201):
        _check_semi_orthogonality(q, (1, 2))


def test_character_mod_4():
    """Test the nontrivial character modulo 4"""
    group = character_group(4)
    chi = group.character(3)

    # Verify basic properties
    assert not chi.is_principal
    assert chi.is_primitive
    assert chi.is_real
    assert chi.parity == -1
    assert chi.kappa == 1
    assert chi.value(3) == pytest.approx(-1)
    assert chi.value(2) == 0
    assert group.principal.label == 1


def test_conductors_mod_12():
    """Test conductors and primitive characters modulo 12"""
    group = character_group(12)
    assert sorted(chi.conductor for chi in group) == [1, 3, 4, 12]

    for chi in group:
        conductor, primitive = conductor_and_primitive(chi)
        assert primitive.modulus == conductor
        assert primitive.is_primitive
        # Verify the primitive character induces chi
        for n in [int(u) for u in modulus_context(12).reduced_residues]:
            assert primitive.value(n) == pytest.approx(chi.value(n))


def test_find_character():
    """Test lookup by label"""
    assert find_character(7, 3).name == "7.3"
    assert find_character(7, 7) is None
    with pytest.raises(ValueError):
        character_group(7).character(14)


@pytest.mark.parametrize("q, a, n, c", [(24, 5, 1, 1), (24, 5, 2, 7), (35, 2, 3, 4), (101, 7, 2, 1)])
def test_weighted_sum_methods_agree(q, a, n, c):
    """Test the orthogonality expansion against the character table"""
    group = character_group(q)
    pair = ResiduePair.of(q, a, 1)
    binomial = weighted_char_sum(group, pair, n, c, method="binomial")
    direct = weighted_char_sum(group, pair, n, c, method="direct")
    assert binomial == pytest.approx(direct, abs=1e-7)
    assert binomial.real % len(group) == pytest.approx(0, abs=1e-9)


def test_race_weights_total():
    """Test that the weights sum to 2 phi(q)"""
    group = character_group(101)
    weights = group.race_weights(7, 1)
    assert weights.sum() == pytest.approx(2 * 100)
    assert weights[group.principal.index] == 0


@pytest.mark.parametrize("q, a", [(12, 5), (60, 7), (63, 2), (420, 11)])
def test_log_qstar_sums(q, a):
    """Test the closed forms of the conductor sums"""
    group = character_group(q)
    pair = ResiduePair.of(q, a, 1)
    closed = log_qstar_weighted_sum(group, pair, method="closed")
    direct = log_qstar_weighted_sum(group, pair, method="direct")
    assert closed == pytest.approx(direct, rel=1e-10)

    direct_total = float(np.sum(np.log(group.conductors.astype(float))))
    assert log_qstar_character_sum(q, 1) == pytest.approx(direct_total, rel=1e-10)


def test_unknown_method():
    """Test that unknown summation methods are rejected"""
    group = character_group(5)
    with pytest.raises(ValueError):
        weighted_char_sum(group, ResiduePair.of(5, 2, 1), 1, 1, method="fft")
