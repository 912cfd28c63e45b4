from fractions import Fraction
from math import erf, pi, sqrt

import numpy as np
import pytest
from scipy.special import j0

from src.arithmetic.modulus import ResiduePair
from src.errors import InsufficientZeroDataError, MethodPreconditionError
from src.density.bessel import bessel_log_coefficient, bessel_log_coeffs, log_abs_j0
from src.density.characteristic import CharacteristicFunction, W_n_from_zeros, log_phi_bounds
from src.density.erf_bounds import delta_erf_bounds, erf_lemma_error, gaussian_density
from src.density.quadrature import adaptive_integral, delta_NR, delta_zeros_quadrature, quadratic_character
from src.density.result import (
    DensityResult,
    choose_method,
    normalized_plot_coords,
    normalized_plot_inverse,
    require_biased_pair,
    symmetric_result,
)
from src.density.series import (
    SeriesCoefficients,
    delta_order2_arithmetic,
    delta_series,
    double_factorial,
    s_coeffs,
)
from src.variance.variance import variance_V


@pytest.fixture
def race_997():
    """The race between 2 and 1 modulo 997"""
    return 997, ResiduePair.of(997, 2, 1)


def test_bessel_log_coefficients():
    """Test the Taylor coefficients of log J0"""
    coeffs = bessel_log_coeffs(3)
    assert coeffs[0] == 0
    assert coeffs[1] == Fraction(-1, 4)
    assert coeffs[2] == Fraction(-1, 64)
    assert coeffs[3] == Fraction(-1, 576)
    assert bessel_log_coefficient(4) == Fraction(-1, 64)
    assert bessel_log_coefficient(3) == 0

    # Verify every coefficient is negative
    assert all(c < 0 for c in bessel_log_coeffs(30)[1:])
    with pytest.raises(ValueError):
        bessel_log_coeffs(31)


def test_log_abs_j0():
    """Test log|J0| across the series and direct branches"""
    z = np.array([0.1, 0.29, 1.0, 3.0])
    values, negative = log_abs_j0(z)
    assert np.allclose(values, np.log(np.abs(j0(z))), atol=1e-13)
    assert negative.tolist() == [False, False, False, True]


def test_series_coefficients():
    """Test the lowest series coefficients"""
    W = {2: 0.3, 3: 0.1}
    assert s_coeffs(0, 0, W) == 1.0
    assert s_coeffs(1, 1, W) == pytest.approx(-1 / 6)
    assert s_coeffs(1, 0, W) == pytest.approx(-3 * 0.3)
    assert double_factorial(0) == 1
    assert double_factorial(3) == 15

    with pytest.raises(ValueError):
        s_coeffs(2, 0, {2: 0.3})
    with pytest.raises(ValueError):
        s_coeffs(1, 2, W)

    # Order zero is the bare Gaussian slope
    assert SeriesCoefficients.build(0, {}).polynomial(2.0, 100.0) == 1.0


def test_result_validation():
    """Test DensityResult invariants and the complement law"""
    result = DensityResult(5, 2, 1, 0.9, 0.89, 0.91, "zeros_quadrature", {"quadrature": 0.01})
    flipped = result.complement()
    assert (flipped.a, flipped.b) == (1, 2)
    assert flipped.value == pytest.approx(0.1)
    assert flipped.lower == pytest.approx(0.09)
    assert flipped.upper == pytest.approx(0.11)

    with pytest.raises(ValueError):
        DensityResult(5, 2, 1, 1.2, 1.1, 1.3, "erf_bounds")
    with pytest.raises(ValueError):
        DensityResult(5, 2, 1, 0.6, 0.7, 0.8, "erf_bounds")
    with pytest.raises(ValueError):
        DensityResult(5, 2, 1, 0.6, 0.5, 0.7, "guess")


def test_symmetric_and_biased_pairs():
    """Test square-class checks"""
    pair = ResiduePair.of(9, 4, 1)
    assert symmetric_result(9, pair).value == 0.5
    assert choose_method(9, pair) == "symmetric"

    with pytest.raises(ValueError):
        require_biased_pair(5, ResiduePair.of(5, 1, 2))
    with pytest.raises(ValueError):
        require_biased_pair(5, ResiduePair.of(5, 2, 3))


def test_choose_method():
    """Test automatic method selection"""
    assert choose_method(5, ResiduePair.of(5, 2, 1)) == "zeros"
    assert choose_method(101, ResiduePair.of(101, 2, 1)) == "zeros"
    assert choose_method(997, ResiduePair.of(997, 2, 1)) == "erf"
    assert choose_method(997, ResiduePair.of(997, 2, 1), V=400.0) == "zeros"

    # Without a variance the choice follows V(q;a,b) itself
    for q, a in [(101, 2), (163, 2)]:
        pair = ResiduePair.of(q, a, 1)
        assert choose_method(q, pair) == choose_method(q, pair, V=variance_V(q, pair).V)
    assert choose_method(163, ResiduePair.of(163, 2, 1)) == "erf"


def test_plot_coordinates():
    """Test the normalized plot coordinates"""
    q, y = normalized_plot_coords(997, 2, 0.508116457)
    assert q == 997
    assert normalized_plot_inverse(997, y) == pytest.approx(0.508116457)

    # y = 0 marks 1/2 + rho/(2 sqrt(pi phi L))
    default = normalized_plot_inverse(997, 0.0)
    assert normalized_plot_coords(997, 2, default)[1] == pytest.approx(0.0, abs=1e-12)

    with pytest.raises(ValueError):
        normalized_plot_coords(7, 3, 0.6)


def test_adaptive_integral():
    """Test the adaptive Gauss-Legendre rule"""
    value, error = adaptive_integral(np.cos, 0.0, 10.0, 1e-12)
    assert value == pytest.approx(np.sin(10.0), abs=1e-11)
    assert error < 1e-10


def test_log_phi_bounds():
    """Test the small-x bounds for log Phi"""
    lower, upper = log_phi_bounds(600.0, 400.0, 0.1)
    assert lower < upper < 0


def test_gaussian_density():
    """Test the Erf main term"""
    assert gaussian_density(2, 8.0) == pytest.approx(0.5 + 0.5 * erf(0.5))
    assert erf_lemma_error(997, 2000.0) < 1e-3


def test_first_cumulant_weight(zeros_q4):
    """Test that W_1 from zeros approaches 1/2"""
    q = 4
    pair = ResiduePair.of(q, 3, 1)
    V = variance_V(q, pair).V
    value, error = W_n_from_zeros(q, pair, 1, zeros_q4, V=V)
    assert value <= 0.5 + 1e-12
    assert value + error >= 0.5 - 1e-9


def test_characteristic_function(zeros_q4):
    """Test Phi at the origin and its decay"""
    phi = CharacteristicFunction.for_race(4, ResiduePair.of(4, 3, 1), zeros_q4)
    values = phi(np.array([0.0, 1.0, 20.0]))
    assert values[0] == pytest.approx(1.0)
    assert abs(values[2]) < abs(values[1]) < 1.0

    with pytest.raises(InsufficientZeroDataError):
        CharacteristicFunction.for_race(5, ResiduePair.of(5, 2, 1), zeros_q4)


def test_zeros_quadrature(zeros_q3, zeros_q4):
    """Test the inversion integral against the classical races"""
    result = delta_zeros_quadrature(4, ResiduePair.of(4, 3, 1), zeros_q4)
    assert result.method == "zeros_quadrature"
    assert result.value == pytest.approx(0.995928, abs=5e-5)
    assert result.lower <= result.value <= result.upper

    result = delta_zeros_quadrature(3, ResiduePair.of(3, 2, 1), zeros_q3)
    assert result.value == pytest.approx(0.999063, abs=5e-5)


def test_residue_race_needs_quadratic_character():
    """Test that delta(q;N,R) needs rho(q) = 2"""
    with pytest.raises(ValueError):
        quadratic_character(8)
    assert quadratic_character(163).is_real

    result = delta_NR(163)
    assert result.tag == "N,R"
    assert 0.5 < result.value < 1
    assert result.to_record()["a"] == "N"


def test_erf_precondition():
    """Test that the Erf bounds refuse small variances"""
    with pytest.raises(MethodPreconditionError):
        delta_erf_bounds(5, ResiduePair.of(5, 2, 1))


def test_series_needs_zeros_beyond_first_order():
    """Test that orders above one need zero data"""
    with pytest.raises(InsufficientZeroDataError):
        delta_series(101, ResiduePair.of(101, 2, 1), K=2)
    with pytest.raises(ValueError):
        delta_order2_arithmetic(101, ResiduePair.of(101, 2, 1))


@pytest.mark.slow
def test_erf_bounds_for_997(race_997):
    """Test the certified enclosure of delta(997;2,1)"""
    q, pair = race_997
    result = delta_erf_bounds(q, pair)
    assert result.value == pytest.approx(0.508116457, abs=5e-8)
    assert result.width <= 3e-8
    assert result.lower <= 0.508116457 <= result.upper


@pytest.mark.slow
@pytest.mark.parametrize("a, published", [(162, 0.524032), (3, 0.525168), (2, 0.525370)])
def test_erf_bounds_for_163(a, published):
    """Test published densities of races against 1 modulo 163"""
    pair = ResiduePair.of(163, a, 1)
    result = delta_erf_bounds(163, pair)
    assert result.value == pytest.approx(published, abs=1e-5)
    assert result.lower <= result.value <= result.upper


@pytest.mark.slow
def test_erf_bounds_for_244():
    """Test the densest race against 1 modulo 244"""
    result = delta_erf_bounds(244, ResiduePair.of(244, 243, 1))
    assert result.value == pytest.approx(0.558910, abs=2.2e-5)


@pytest.mark.slow
def test_series_agrees_with_erf_bounds(race_997):
    """Test the first-order series and the order-two formula at q = 997"""
    q, pair = race_997
    certified = delta_erf_bounds(q, pair).value

    assert delta_series(q, pair, K=1).value == pytest.approx(certified, abs=1e-6)
    assert delta_series(q, pair, K=0).value == pytest.approx(0.5 + 2 / sqrt(2 * pi * variance_V(q, pair).V))
    assert delta_order2_arithmetic(q, pair, remainder="lvalues").value == pytest.approx(certified, abs=1e-5)
