from math import pi, sqrt

import numpy as np
import pytest

from src.characters.dirichlet import character_group
from src.errors import InsufficientZeroDataError, ZeroFileError
from src.lfunctions.critical_line import CriticalLineEvaluator, root_number
from src.lfunctions.smoothed import logderiv_smoothed
from src.lfunctions.values import (
    L_derivatives_at_1,
    b_chi_closed,
    log_derivative_at_1,
    lvalue_bundle,
)
from src.lfunctions.zero_sums import b_n_from_zeros, tail_bound
from src.lfunctions.zeros import (
    N_T_bounds,
    ZeroList,
    find_zero_pair,
    load_zeros,
    save_zeros,
    zeros_filename,
)


def test_L_values_at_one():
    """Test L(1, chi) for the real characters modulo 4 and 3"""
    chi4 = character_group(4).character(3)
    chi3 = character_group(3).character(2)

    assert L_derivatives_at_1(chi4).L == pytest.approx(pi / 4, abs=1e-12)
    assert L_derivatives_at_1(chi3).L == pytest.approx(pi / (3 * sqrt(3)), abs=1e-12)


@pytest.mark.parametrize("label", [2, 3, 6])
def test_L_value_methods_agree(label):
    """Test Euler-Maclaurin values against mpmath"""
    chi = character_group(7).character(label)
    fast = L_derivatives_at_1(chi)
    reference = L_derivatives_at_1(chi, method="mpmath")
    assert fast.L == pytest.approx(reference.L, abs=1e-10)
    assert fast.dL == pytest.approx(reference.dL, abs=1e-10)
    assert fast.d2L == pytest.approx(reference.d2L, abs=1e-10)


def test_imprimitive_characters():
    """Test the Euler factor correction for imprimitive characters"""
    group = character_group(12)
    chi = next(c for c in group if c.conductor == 3)
    with pytest.raises(ValueError):
        L_derivatives_at_1(chi)

    primitive = group.primitive(chi)
    expected = lvalue_bundle(primitive).log_derivative + primitive.value(2) * np.log(2) / (2 - primitive.value(2))
    assert log_derivative_at_1(chi) == pytest.approx(expected)

    with pytest.raises(ValueError):
        log_derivative_at_1(group.principal)


def test_smoothed_log_derivative():
    """Test the smoothed prime sum against the exact log-derivative"""
    chi = character_group(5).character(2)
    value, bound = logderiv_smoothed(chi, 1e5)
    assert abs(value - log_derivative_at_1(chi)) <= bound


def test_root_numbers():
    """Test root numbers of primitive characters"""
    # Real primitive characters have root number 1
    assert root_number(character_group(4).character(3)) == pytest.approx(1)
    assert root_number(character_group(5).character(4)) == pytest.approx(1)

    for chi in character_group(11):
        if not chi.is_principal:
            assert abs(root_number(chi)) == pytest.approx(1)


def test_critical_line_hardy_function_is_real():
    """Test that Z(t) is real for a real character"""
    evaluator = CriticalLineEvaluator(character_group(4).character(3))
    t = np.array([1.0, 6.0, 6.0209489047, 13.7])
    values = evaluator.Z(t)
    assert abs(values[2]) < 1e-6
    assert abs(values[0]) > 1e-3


def test_first_zeros(zeros_q3, zeros_q4):
    """Test the lowest zeros of the characters modulo 3 and 4"""
    assert zeros_q4[3].ordinates[0] == pytest.approx(6.020948904697597, abs=1e-6)
    assert zeros_q3[2].ordinates[0] == pytest.approx(8.039737155681467, abs=1e-6)

    # Verify counts lie in the admissible window
    lower, upper = N_T_bounds(4, 100.0)
    assert lower <= 2 * len(zeros_q4[3]) <= upper


def test_zero_pair_for_complex_character():
    """Test that conjugate zero lists come from one scan"""
    chi = character_group(5).character(2)
    zeros, conjugate = find_zero_pair(chi, 100.0)
    assert conjugate.label == chi.conjugate_label
    assert len(zeros) > 10
    assert len(conjugate) > 10
    assert not np.allclose(zeros.ordinates[:5], conjugate.ordinates[:5])


def test_zero_sums(zeros_q4):
    """Test b(chi) from zeros against its closed form"""
    chi = character_group(4).character(3)
    zeros = zeros_q4[3]
    closed = b_chi_closed(chi)

    truncated = b_n_from_zeros(zeros)
    assert truncated.partial <= closed <= truncated.partial + truncated.tail_bound

    completed = b_n_from_zeros(zeros, tail_mode="closed", chi=chi)
    assert completed.value == pytest.approx(closed)
    assert tail_bound(4, 100.0, 2, 0) > tail_bound(4, 200.0, 2, 0)


def test_zero_sums_need_height():
    """Test that short zero lists are rejected"""
    short = ZeroList(4, 3, 4, np.array([6.020948904697597]), 10.0)
    with pytest.raises(InsufficientZeroDataError):
        b_n_from_zeros(short)


def test_zero_file_round_trip(tmp_path, zeros_q4):
    """Test writing and reading a zero file"""
    path = save_zeros(zeros_q4[3], str(tmp_path))
    assert path.name == zeros_filename(4, 3)

    loaded = load_zeros(str(path), q=4, label=3)
    assert loaded.source == "file"
    assert loaded.height == zeros_q4[3].height
    assert np.allclose(loaded.ordinates, zeros_q4[3].ordinates, atol=1e-11)


def test_malformed_zero_file(tmp_path):
    """Test that bad zero files report the offending line"""
    path = tmp_path / "q4.chi3.txt"
    path.write_text("# q=4\n# chi=3\n# height=100.0\n6.02\n21.02\n10.24\n", encoding="utf-8")
    with pytest.raises(ZeroFileError) as info:
        load_zeros(str(path))
    assert info.value.line == 6

    path.write_text("# q=4\n# chi=3\nsix\n", encoding="utf-8")
    with pytest.raises(ZeroFileError):
        load_zeros(str(path))

    path.write_text("# q=4\n# chi=3\n# height=100.0\n6.02\n", encoding="utf-8")
    with pytest.raises(ZeroFileError):
        load_zeros(str(path), q=5)
