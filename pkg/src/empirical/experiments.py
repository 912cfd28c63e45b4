"""Finite-range experiments on actual prime counts.

All samples are taken on the fixed grid x_i = 10^(3 + (log10 X - 3) i/n),
i = 0..n-1, the left endpoints of n equal logarithmic steps from 10^3 to X.
For X = 10^7 and n = 400 the step is exactly 0.01 decade. Repeated runs are
identical.
"""

from typing import Optional, Sequence, Tuple
from dataclasses import dataclass, field
from math import log10
import logging

import numpy as np
import pandas as pd

from ..arithmetic.modulus import ResiduePair, inverse_mod, is_square_mod, modulus_context
from ..variance.variance import variance_plus
from .counts import PrimeCounter, sieve_pi

logger = logging.getLogger(__name__)

GRID_START_EXPONENT = 3
DEFAULT_X = 10 ** 7
DEFAULT_POINTS = 400


@dataclass(frozen=True)
class RaceSample:
    """Error terms E(x;q,a) for several classes on one grid"""
    q: int
    residues: Tuple[int, ...]
    grid: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if np.any(np.diff(self.grid) <= 0):
            raise ValueError("Sample grid must be strictly increasing")
        if self.values.shape != (len(self.residues), len(self.grid)):
            raise ValueError(f"Sample values have shape {self.values.shape}, expected {(len(self.residues), len(self.grid))}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("Sample values must be finite")

    def row(self, a: int) -> np.ndarray:
        return self.values[self.residues.index(a % self.q)]


def log_grid(X: float, n: int) -> np.ndarray:
    """n points from 10^3 upward, spaced (log10 X - 3)/n decades apart

    The grid starts at 10^3 and stops one step short of X.
    """
    if n < 2:
        raise ValueError(f"Grid needs at least two points, got {n}")
    if X <= 10 ** GRID_START_EXPONENT:
        raise ValueError(f"Grid end {X} must exceed {10 ** GRID_START_EXPONENT}")
    exponents = GRID_START_EXPONENT + (log10(X) - GRID_START_EXPONENT) * np.arange(n) / n
    return 10.0 ** exponents


def race_sample(
    q: int,
    residues: Sequence[int],
    X: float = DEFAULT_X,
    n: int = DEFAULT_POINTS,
    counter: Optional[PrimeCounter] = None
) -> RaceSample:
    """E(x;q,a) for each residue over the fixed grid"""
    ctx = modulus_context(q)
    residues = tuple(ctx.check_reduced(a) for a in residues)
    grid = log_grid(X, n)
    counter = counter if counter is not None and counter.q == q else sieve_pi(q, X)
    values = np.vstack([counter.E(a, grid) for a in residues])
    return RaceSample(q, residues, grid, values)


def race_tally(
    q: int,
    a: int,
    b: int,
    X: float = DEFAULT_X,
    npoints: int = 10 ** 4,
    counter: Optional[PrimeCounter] = None
) -> Tuple[float, float, float]:
    """Fractions of grid points where a leads, the counts tie, and b leads"""
    ResiduePair.of(q, a, b).require_distinct()
    grid = log_grid(X, npoints)
    counter = counter if counter is not None and counter.q == q else sieve_pi(q, X)
    lead = counter.pi_class(a, grid) - counter.pi_class(b, grid)
    wins = np.count_nonzero(lead > 0) / npoints
    ties = np.count_nonzero(lead == 0) / npoints
    return wins, ties, 1 - wins - ties


def empirical_logdensity(
    q: int,
    a: int,
    b: int,
    X: float = DEFAULT_X,
    npoints: int = 10 ** 4,
    counter: Optional[PrimeCounter] = None
) -> float:
    """Share of log-uniform sample points in [10^3, X] with pi(x;q,a) > pi(x;q,b)

    Ties do not count as wins.
    """
    wins, ties, _ = race_tally(q, a, b, X, npoints, counter)
    logger.debug(f"Empirical race {q};{a},{b} to {X:g}: wins {wins:.4f}, ties {ties:.4f}")
    return wins


def mirror_variance_sample(
    q: int,
    a: int,
    b: int,
    X: float = DEFAULT_X,
    n: int = DEFAULT_POINTS,
    counter: Optional[PrimeCounter] = None
) -> float:
    """Variance (n denominator) of E(x;q,a) + E(x;q,b) over the grid"""
    sample = race_sample(q, (a, b), X, n, counter)
    return float(np.var(sample.values.sum(axis=0)))


def mirror_correlation(
    q: int,
    a: int,
    b: int,
    X: float = DEFAULT_X,
    n: int = DEFAULT_POINTS,
    counter: Optional[PrimeCounter] = None
) -> float:
    """Pearson correlation of E(x;q,a) and -E(x;q,b) on the grid"""
    sample = race_sample(q, (a, b), X, n, counter)
    return float(np.corrcoef(sample.values[0], -sample.values[1])[0, 1])


def mirror_variance_groups(
    q: int,
    X: float = DEFAULT_X,
    n: int = DEFAULT_POINTS,
    counter: Optional[PrimeCounter] = None
) -> pd.DataFrame:
    """Observed and theoretical variances of E(x;q,a) + E(x;q,b), a square and b a nonsquare

    Pairs are grouped by the class {ab^-1, ba^-1}; the theoretical variance
    V+(q;a,b) depends only on that class.

    Returns:
        DataFrame with columns ratio, ratio_inverse, pairs, observed, theoretical
    """
    ctx = modulus_context(q)
    units = [int(u) for u in ctx.reduced_residues]
    squares = [u for u in units if is_square_mod(q, u)]
    nonsquares = [u for u in units if not is_square_mod(q, u)]
    counter = counter if counter is not None and counter.q == q else sieve_pi(q, X)

    groups = {}
    for a in squares:
        for b in nonsquares:
            pair = ResiduePair.of(q, a, b)
            key = tuple(sorted((pair.r1, pair.r2)))
            groups.setdefault(key, []).append(pair)

    rows = []
    for key, pairs in sorted(groups.items()):
        observed = [mirror_variance_sample(q, p.a, p.b, X, n, counter) for p in pairs]
        rows.append({
            "ratio": key[0],
            "ratio_inverse": inverse_mod(key[0], q),
            "pairs": len(pairs),
            "observed": float(np.mean(observed)),
            "theoretical": variance_plus(q, pairs[0]),
        })
    logger.info(f"Mirror variances modulo {q}: {len(rows)} groups from {sum(r['pairs'] for r in rows)} pairs")
    return pd.DataFrame(rows)
