import numpy as np
import pytest

from src.arithmetic.modulus import ResiduePair, prime_divisor_log_sum, rho
from src.arithmetic.prime_powers import H_and_H0
from src.bounds.explicit import (
    M_star_deviation_bound,
    H0_bounds,
    composite_variance_bounds,
    density_theorem_bound,
    erf_main_term,
    lowest_zero_lift_limit,
    lowest_zero_variance_lift,
    prime_divisor_log_sum_bound,
    prime_variance_bounds,
    rho_upper_bound,
    zeros_near_height_bound,
)
from src.cli.top_races import nonsquare_representatives
from src.errors import MethodPreconditionError
from src.variance.variance import variance_V


def test_arithmetic_bounds_hold():
    """Test the bounds on rho(q) and on the prime-divisor sum"""
    for q in range(3, 3000):
        assert rho(q) <= rho_upper_bound(q)
        assert prime_divisor_log_sum(q) <= prime_divisor_log_sum_bound(q)


@pytest.mark.parametrize("q, a", [(420, 11), (420, 13), (24, 5), (997, 2)])
def test_H0_bounds(q, a):
    """Test that H0 stays inside its interval"""
    _, H0 = H_and_H0(q, ResiduePair.of(q, a, 1))
    lower, upper = H0_bounds(q)
    assert lower <= H0 <= upper


def test_variance_bounds_arguments():
    """Test the ranges of the variance bounds"""
    with pytest.raises(ValueError):
        prime_variance_bounds(100)
    with pytest.raises(ValueError):
        prime_variance_bounds(101)
    with pytest.raises(ValueError):
        composite_variance_bounds(499)
    with pytest.raises(ValueError):
        M_star_deviation_bound(149)
    assert 2 * M_star_deviation_bound(163) * 163 == pytest.approx(47.238 * np.log(163) ** 2)
    lower, upper = composite_variance_bounds(1000)
    assert lower < upper


@pytest.mark.parametrize("q", [163, 199])
def test_prime_variance_bounds(q):
    """Test that every race against 1 respects the prime bounds"""
    lower, upper = prime_variance_bounds(q)
    # 2(q-1)(log q - 2.42) - 47.238 log^2 q and 2(q-1)(log q - 0.99) + 47.238 log^2 q
    assert upper - lower == pytest.approx(2 * (q - 1) * 1.43 + 2 * 47.238 * np.log(q) ** 2)
    for a, _ in nonsquare_representatives(q):
        V = variance_V(q, ResiduePair.of(q, a, 1)).V
        assert lower <= V <= upper


def test_density_ceilings():
    """Test which published ceiling applies"""
    assert density_theorem_bound(997) == 0.51
    assert density_theorem_bound(401) == 0.5262
    assert density_theorem_bound(481) == 0.75
    assert density_theorem_bound(840) is None
    assert density_theorem_bound(24) is None


def test_erf_main_term():
    """Test the Gaussian main term and its preconditions"""
    pair = ResiduePair.of(997, 2, 1)
    value, error = erf_main_term(997, pair, 9000.0)
    assert 0.5 < value < 0.51
    assert 0 < error < 1e-3

    with pytest.raises(MethodPreconditionError):
        erf_main_term(997, pair, 100.0)


def test_zeros_near_height(zeros_q4):
    """Test the local zero-count bound against found zeros"""
    ordinates = zeros_q4[3].ordinates
    for T in (20.0, 50.0, 90.0):
        nearby = np.count_nonzero(np.abs(ordinates - T) <= 2)
        assert nearby <= zeros_near_height_bound(4, T)


def test_lowest_zero_lift():
    """Test the variance lift from a low-lying zero"""
    assert lowest_zero_variance_lift(163, 1.0) == pytest.approx(0.0, abs=1e-15)
    assert lowest_zero_variance_lift(163, 0.16449) == pytest.approx(0.56, abs=0.01)
    assert lowest_zero_variance_lift(163, 0.0) == pytest.approx(lowest_zero_lift_limit(163))
    assert lowest_zero_variance_lift(163, 2.0) < 0

    with pytest.raises(ValueError):
        lowest_zero_variance_lift(163, -0.5)
