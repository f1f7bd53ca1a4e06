"""Segmented sieve, von Mangoldt tables, Chebyshev sums and 64-bit primality."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._backend import kernels

MAX_SIEVE = 10**10
DEFAULT_SEGMENT_BYTES = 2**18
DEFAULT_MEMORY_BUDGET = 2**30


class BudgetExceeded(MemoryError):
    """A requested table would not fit in the configured memory budget."""


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("SPECTRALPRIMES_THREADS", "1")))
    except ValueError:
        return 1


def is_prime_u64(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**63."""
    n = int(n)
    if n < 0 or n >= 2**63:
        raise ValueError("is_prime_u64 accepts 0 <= n < 2**63")
    return kernels.is_prime_u64(n)


@lru_cache(maxsize=8)
def _small_primes(limit: int) -> np.ndarray:
    """Plain Eratosthenes up to a small limit (base primes for segments)."""
    limit = max(int(limit), 2)
    s = np.ones(limit + 1, dtype=bool)
    s[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if s[i]:
            s[i * i :: i] = False
    out = np.flatnonzero(s).astype(np.int64)
    out.setflags(write=False)
    return out


def base_primes_for(hi: int) -> np.ndarray:
    """All primes up to sqrt(hi), enough to sieve any segment below hi."""
    return _small_primes(math.isqrt(max(int(hi), 4)) + 1)


def _odd_segments(lo: int, hi: int, segment_bytes: int):
    """Split the odd numbers in [lo, hi) into aligned (start, stop) chunks."""
    span = 2 * segment_bytes
    start = lo | 1
    while start < hi:
        stop = min(start + span, hi)
        yield start, stop
        start = stop


def odd_flags(lo: int, hi: int, base=None) -> tuple[int, np.ndarray]:
    """Primality flags for odd numbers in [lo, hi); returns (first_odd, flags)."""
    start = lo | 1
    if base is None:
        base = base_primes_for(hi)
    flags = kernels.sieve_odd_segment(start, hi, base)
    if start == 1 and flags.size:
        flags[0] = 0
    return start, flags


@dataclass(frozen=True)
class PrimeTable:
    """Odd-only packed bitset of primality flags for 1..limit."""

    limit: int
    bits: np.ndarray

    def __contains__(self, n) -> bool:
        n = int(n)
        if n == 2:
            return self.limit >= 2
        if n < 2 or n % 2 == 0 or n > self.limit:
            return False
        i = n // 2
        return bool((self.bits[i >> 3] >> (7 - (i & 7))) & 1)

    def odd_flags(self) -> np.ndarray:
        return np.unpackbits(self.bits, count=(self.limit + 1) // 2)

    def primes(self) -> np.ndarray:
        if self.limit < 2:
            return np.zeros(0, dtype=np.int64)
        odd = np.flatnonzero(self.odd_flags()).astype(np.int64) * 2 + 1
        return np.concatenate(([2], odd[odd <= self.limit]))

    def count(self) -> int:
        if self.limit < 2:
            return 0
        return 1 + int(np.count_nonzero(self.odd_flags()))

    @property
    def nbytes(self) -> int:
        return self.bits.nbytes


def primes_up_to(
    x: int,
    segment_bytes: int = DEFAULT_SEGMENT_BYTES,
    memory_budget: int = DEFAULT_MEMORY_BUDGET,
    threads: int | None = None,
) -> PrimeTable:
    """Segmented, odd-only sieve of Eratosthenes up to x <= 10**10."""
    x = int(x)
    if x < 2:
        raise ValueError("x must be at least 2")
    if x > MAX_SIEVE:
        raise ValueError(f"x must not exceed {MAX_SIEVE}")
    need = (x // 2 + 1 + 7) // 8
    if need > memory_budget:
        raise BudgetExceeded(f"prime table up to {x} needs {need} bytes, budget is {memory_budget}")
    base = base_primes_for(x + 1)
    segs = list(_odd_segments(1, x + 1, segment_bytes))
    threads = threads or default_threads()

    def run(seg):
        return odd_flags(seg[0], seg[1], base)[1]

    if threads > 1 and len(segs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, segs))
    else:
        parts = [run(s) for s in segs]
    flags = np.concatenate(parts) if parts else np.zeros(0, dtype=np.uint8)
    return PrimeTable(x, np.packbits(flags))


def prime_array(x: int) -> np.ndarray:
    """Sorted int64 array of primes <= x."""
    return primes_up_to(x).primes()


def lambda_base_segment(lo: int, hi: int, base=None) -> np.ndarray:
    """Prime-power base p of each n in [lo, hi), 0 where Lambda(n) = 0."""
    lo = max(int(lo), 1)
    hi = int(hi)
    out = np.zeros(max(hi - lo, 0), dtype=np.int64)
    if hi <= lo:
        return out
    if base is None:
        base = base_primes_for(hi)
    start, flags = odd_flags(lo, hi, base)
    odd = start + 2 * np.flatnonzero(flags).astype(np.int64)
    out[odd - lo] = odd
    if lo <= 2 < hi:
        out[2 - lo] = 2
    for p in base.tolist():
        if p * p >= hi:
            break
        pk = p
        while pk < hi:
            if pk >= lo:
                out[pk - lo] = p
            pk *= p
    return out


@dataclass(frozen=True)
class LambdaTable:
    """Prime-power base for every n <= limit (index n; 0 where Lambda(n) = 0)."""

    limit: int
    base: np.ndarray

    def log_values(self) -> np.ndarray:
        out = np.zeros(self.base.shape, dtype=np.float64)
        nz = self.base > 0
        out[nz] = np.log(self.base[nz].astype(np.float64))
        return out


def lambda_table(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> LambdaTable:
    limit = int(limit)
    need = 8 * (limit + 1)
    if need > memory_budget:
        raise BudgetExceeded(f"Lambda table up to {limit} needs {need} bytes, budget is {memory_budget}")
    base = np.zeros(limit + 1, dtype=np.int64)
    base[1:] = lambda_base_segment(1, limit + 1)
    return LambdaTable(limit, base)


def _floor_log(x: int, p: int) -> int:
    k = 0
    v = p
    while v <= x:
        k += 1
        v *= p
    return k


def lambda_sum(x) -> float:
    """Chebyshev psi(x): sum over p <= x of floor(log_p x) * log p."""
    x = int(math.floor(x))
    if x < 2:
        return 0.0
    p = prime_array(x)
    k = np.ones(p.shape, dtype=np.float64)
    small = p[p <= math.isqrt(x)]
    k[: small.size] = [_floor_log(x, int(q)) for q in small.tolist()]
    return math.fsum(k * np.log(p.astype(np.float64)))


def lambda_over_n_sum(x) -> float:
    """Sum over prime powers p**k <= x of log(p) / p**k."""
    x = int(math.floor(x))
    if x < 2:
        return 0.0
    p = prime_array(x)
    logp = np.log(p.astype(np.float64))
    terms = [logp / p]
    pk = p.copy()
    mask = np.ones(p.shape, dtype=bool)
    while True:
        mask &= pk <= x // p
        if not mask.any():
            break
        pk = np.where(mask, pk * p, pk)
        terms.append(logp[mask] / pk[mask])
    return math.fsum(np.concatenate(terms))
