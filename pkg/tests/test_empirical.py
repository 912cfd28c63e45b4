import numpy as np
import pytest

from src.arithmetic.primes import SieveLimitError
from src.empirical.counts import E_xqa, PrimeCounter, sieve_pi
from src.empirical.experiments import (
    RaceSample,
    empirical_logdensity,
    log_grid,
    mirror_correlation,
    mirror_variance_groups,
    mirror_variance_sample,
    race_sample,
    race_tally,
)
from src.cli.table import MIRROR_REFERENCE


@pytest.fixture(scope="module")
def counter_mod_4():
    """Prime counts modulo 4 up to 10^6"""
    return sieve_pi(4, 1e6)


def test_class_counts():
    """Test pi(x;q,a) against hand counts"""
    counter = PrimeCounter(4, 100)
    assert int(counter.pi(100)) == 25
    assert int(counter.pi_class(1, 100)) == 11
    assert int(counter.pi_class(3, 100)) == 13
    assert int(counter.pi_class(3, 10.5)) == 2
    assert int(sieve_pi(3, 10).pi_class(2, 10)) == 2

    with pytest.raises(ValueError):
        counter.pi_class(2, 50)
    with pytest.raises(ValueError):
        counter.pi(200)


def test_normalized_error_term(counter_mod_4):
    """Test E(x;q,a) against its definition"""
    x = np.array([1000.0, 26861.0, 1e6])
    expected = np.log(x) / np.sqrt(x) * (2 * counter_mod_4.pi_class(3, x) - counter_mod_4.pi(x))
    assert np.allclose(counter_mod_4.E(3, x), expected)
    assert np.allclose(E_xqa(4, 3, x, counter=counter_mod_4), expected)

    with pytest.raises(ValueError):
        counter_mod_4.E(3, 1.0)


def test_sieve_limit():
    """Test that sieving past 10^9 is refused"""
    with pytest.raises(SieveLimitError):
        sieve_pi(4, 2e9)


def test_log_grid():
    """Test the fixed logarithmic grid"""
    grid = log_grid(1e7, 400)
    assert len(grid) == 400
    assert grid[0] == pytest.approx(1e3)
    # Hundredth-of-a-decade steps, stopping one step short of 10^7
    assert grid[100] == pytest.approx(1e4)
    assert grid[-1] == pytest.approx(10 ** 6.99)
    assert np.allclose(np.diff(np.log10(grid)), 0.01)
    assert np.all(np.diff(np.log(grid)) > 0)

    with pytest.raises(ValueError):
        log_grid(1e7, 1)
    with pytest.raises(ValueError):
        log_grid(500, 10)


def test_race_sample_validation():
    """Test RaceSample invariants"""
    grid = np.array([1e3, 1e4, 1e5])
    with pytest.raises(ValueError):
        RaceSample(4, (1, 3), grid[::-1], np.zeros((2, 3)))
    with pytest.raises(ValueError):
        RaceSample(4, (1, 3), grid, np.zeros((3, 3)))
    with pytest.raises(ValueError):
        RaceSample(4, (1, 3), grid, np.full((2, 3), np.nan))


def test_race_sample_rows(counter_mod_4):
    """Test that the two classes mod 4 have nearly opposite error terms"""
    sample = race_sample(4, (1, 3), 1e6, 200, counter=counter_mod_4)
    # pi(x) = pi(x;4,1) + pi(x;4,3) + 1 for x >= 2
    total = sample.row(1) + sample.row(3)
    assert np.allclose(total, -2 * np.log(sample.grid) / np.sqrt(sample.grid))
    assert sample.residues == (1, 3)


def test_chebyshev_bias_is_visible(counter_mod_4):
    """Test that 3 mod 4 leads for most of the range"""
    wins, ties, losses = race_tally(4, 3, 1, 1e6, 1000, counter=counter_mod_4)
    assert wins + ties + losses == pytest.approx(1.0)
    assert wins >= 0.9
    assert empirical_logdensity(4, 3, 1, 1e6, 1000, counter=counter_mod_4) == wins

    with pytest.raises(ValueError):
        race_tally(4, 3, 7, 1e6, 1000, counter=counter_mod_4)


def test_mirror_statistics():
    """Test the mirror variance and correlation for one pair modulo 11"""
    counter = sieve_pi(11, 1e6)
    variance = mirror_variance_sample(11, 1, 2, 1e6, 200, counter=counter)
    assert variance > 0
    assert mirror_variance_sample(11, 1, 2, 1e6, 200, counter=counter) == variance
    assert -1.0 <= mirror_correlation(11, 1, 2, 1e6, 200, counter=counter) <= 1.0


@pytest.mark.slow
def test_mirror_variance_groups():
    """Test observed and theoretical mirror variances modulo 11"""
    frame = mirror_variance_groups(11, 1e7, 400)
    assert list(frame.columns) == ["ratio", "ratio_inverse", "pairs", "observed", "theoretical"]
    # 5 squares times 5 nonsquares
    assert frame["pairs"].sum() == 25

    rows = {(int(r), int(s)): (obs, theo) for r, s, obs, theo in zip(
        frame["ratio"], frame["ratio_inverse"], frame["observed"], frame["theoretical"]
    )}
    assert set(rows) == set(MIRROR_REFERENCE)

    # Verify
    for key, (observed, theoretical) in MIRROR_REFERENCE.items():
        assert rows[key][1] == pytest.approx(theoretical, abs=0.02)
        assert rows[key][0] == pytest.approx(observed, abs=0.05)
    # The a + b = 11 group has the smallest spread
    assert rows[(10, 10)][0] < rows[(2, 6)][0] < rows[(7, 8)][0]
