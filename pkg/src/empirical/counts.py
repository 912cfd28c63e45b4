from typing import Dict, Optional, Union
from math import gcd
import logging

import numpy as np

from ..arithmetic.modulus import modulus_context
from ..arithmetic.primes import primes_up_to

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


class PrimeCounter:
    """Exact prime counts pi(x) and pi(x;q,a) for every x up to a fixed limit

    Primes are kept once, split by residue class; counts at arbitrary x come
    from binary search.
    """

    def __init__(self, q: int, limit: int, cache_path: Optional[str] = None):
        """Sieve and split by class

        Args:
            q: Modulus
            limit: Largest x that can be queried
            cache_path: Optional on-disk prime cache
        """
        if q < 1:
            raise ValueError(f"Modulus must be positive, got {q}")
        self.q = q
        self.limit = int(limit)
        self.primes = primes_up_to(self.limit, cache_path=cache_path)
        classes = self.primes % q
        self.by_class: Dict[int, np.ndarray] = {
            a: self.primes[classes == a] for a in range(q) if gcd(a, q) == 1
        }
        logger.info(f"Counted {len(self.primes)} primes up to {self.limit} in {len(self.by_class)} classes mod {q}")

    def _check(self, x: np.ndarray) -> None:
        if np.any(x > self.limit):
            raise ValueError(f"Counts requested beyond the sieve limit {self.limit}")

    def pi(self, x: ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        self._check(x)
        return np.searchsorted(self.primes, np.floor(x), side="right")

    def pi_class(self, a: int, x: ArrayLike) -> np.ndarray:
        """pi(x;q,a)"""
        a = modulus_context(self.q).check_reduced(a)
        x = np.asarray(x, dtype=np.float64)
        self._check(x)
        return np.searchsorted(self.by_class[a], np.floor(x), side="right")

    def E(self, a: int, x: ArrayLike) -> np.ndarray:
        """E(x;q,a) = (log x / sqrt x)(phi(q) pi(x;q,a) - pi(x))"""
        x = np.asarray(x, dtype=np.float64)
        if np.any(x < 2):
            raise ValueError("Normalized error terms need x >= 2")
        phi = modulus_context(self.q).phi
        return np.log(x) / np.sqrt(x) * (phi * self.pi_class(a, x) - self.pi(x))


def sieve_pi(q: int, X: float, cache_path: Optional[str] = None) -> PrimeCounter:
    """Counting structure answering pi(x;q,a) for all classes a and x <= X"""
    return PrimeCounter(q, int(X), cache_path=cache_path)


def E_xqa(q: int, a: int, x: ArrayLike, counter: Optional[PrimeCounter] = None) -> np.ndarray:
    """The normalized error term E(x;q,a)

    Args:
        q: Modulus
        a: Reduced residue
        x: Point or points with x >= 2
        counter: Reused counting structure (built up to max x when omitted)
    """
    if counter is None or counter.q != q:
        counter = sieve_pi(q, float(np.max(x)))
    return counter.E(a, x)
