from typing import Optional, Tuple
from pathlib import Path
import logging
import math

import numpy as np

logger = logging.getLogger(__name__)

SEGMENT_SIZE = 1 << 23
MAX_SIEVE_LIMIT = 10 ** 9


class SieveLimitError(ValueError):
    """Requested sieve exceeds the supported memory envelope"""


def _small_primes(limit: int) -> np.ndarray:
    """Plain Eratosthenes sieve up to limit"""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_prime[p]:
            is_prime[p * p::2 * p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def _segmented(limit: int) -> np.ndarray:
    root = math.isqrt(limit)
    base = _small_primes(root)
    chunks = [base]
    low = root + 1
    while low <= limit:
        high = min(low + SEGMENT_SIZE, limit + 1)
        alive = np.ones(high - low, dtype=bool)
        for p in base.tolist():
            start = max(p * p, -(-low // p) * p)
            if start >= high:
                continue
            alive[start - low::p] = False
        chunks.append(low + np.flatnonzero(alive).astype(np.int64))
        logger.debug(f"Sieved segment [{low}, {high})")
        low = high
    return np.concatenate(chunks)


def primes_up_to(limit: int, cache_path: Optional[str] = None) -> np.ndarray:
    """All primes <= limit

    Args:
        limit: Upper bound (inclusive)
        cache_path: Optional on-disk cache of little-endian 64-bit prime gaps

    Returns:
        Ascending int64 array of primes
    """
    if limit > MAX_SIEVE_LIMIT:
        raise SieveLimitError(f"Sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}")
    if cache_path:
        cached = _load_cache(Path(cache_path), limit)
        if cached is not None:
            return cached
    primes = _small_primes(limit) if limit <= SEGMENT_SIZE else _segmented(limit)
    if cache_path:
        _save_cache(Path(cache_path), limit, primes)
    return primes


def _load_cache(path: Path, limit: int) -> Optional[np.ndarray]:
    if not path.exists():
        return None
    data = np.fromfile(path, dtype="<i8")
    # First word is the limit the cache was built to
    if len(data) == 0 or data[0] < limit:
        return None
    primes = np.cumsum(data[1:])
    logger.info(f"Loaded {len(primes)} primes from cache {path}")
    return primes[primes <= limit]


def _save_cache(path: Path, limit: int, primes: np.ndarray) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    gaps = np.diff(primes, prepend=0)
    np.concatenate([[limit], gaps]).astype("<i8").tofile(path)
    logger.info(f"Wrote {len(primes)} primes to cache {path}")


def von_mangoldt_table(limit: int) -> Tuple[np.ndarray, np.ndarray]:
    """Prime powers p^k <= limit with their von Mangoldt weights log p

    Returns:
        Tuple of (prime powers ascending, log p values)
    """
    primes = primes_up_to(limit)
    powers = [primes]
    logs = [np.log(primes.astype(np.float64))]
    base = primes[primes <= math.isqrt(limit)]
    current = base.copy()
    while len(current):
        current = current * base
        # p^k grows with p, so the survivors form a prefix
        keep = int(np.count_nonzero(current <= limit))
        current = current[:keep]
        base = base[:keep]
        if keep:
            powers.append(current)
            logs.append(np.log(base.astype(np.float64)))
    n = np.concatenate(powers)
    weights = np.concatenate(logs)
    order = np.argsort(n, kind="stable")
    return n[order], weights[order]
