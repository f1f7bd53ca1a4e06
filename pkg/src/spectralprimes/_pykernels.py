"""Pure-Python/numpy implementations of the hot kernels.

Same signatures as the compiled ``_ckernels`` module; selected by
``spectralprimes._backend`` when the extension is unavailable.
"""
import numpy as np

# Strong-pseudoprime bases: complete for all n < 3.3e24 (Sorenson & Webster).
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime_u64(n):
    n = int(n)
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 2209:  # 47**2
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_odd_segment(lo, hi, base_primes):
    """Primality flags for the odd numbers lo, lo+2, ... below hi (lo odd).

    ``base_primes`` must contain every odd prime up to sqrt(hi - 1); the
    number 1 is left for the caller to clear.
    """
    lo = int(lo)
    hi = int(hi)
    size = max(0, (hi - lo + 1) // 2)
    flags = np.ones(size, dtype=np.uint8)
    for p in base_primes:
        p = int(p)
        if p == 2:
            continue
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        flags[(start - lo) // 2::p] = 0
    return flags


def _poly_roots_mod(p, d, c):
    r = np.arange(p, dtype=np.int64)
    v = np.ones(p, dtype=np.int64)
    for _ in range(d):
        v = v * r % p
    return np.flatnonzero((v + c) % p == 0)


def poly_twin_hits(d, c1, c2, n_max, sieve_limit=2000):
    """All 1 <= n <= n_max with n**d + c1 and n**d + c2 both prime."""
    d = int(d)
    c1 = int(c1)
    c2 = int(c2)
    n_max = int(n_max)
    if n_max < 1:
        return np.zeros(0, dtype=np.int64)
    alive = np.ones(n_max + 1, dtype=bool)
    alive[0] = False
    small = [p for p in range(2, sieve_limit) if is_prime_u64(p)]
    for p in small:
        for c in (c1, c2):
            for r in _poly_roots_mod(p, d, c):
                alive[int(r)::p] = False
    # values that equal a sieving prime were wrongly struck out
    hi = sieve_limit + max(abs(c1), abs(c2))
    n = 1
    while n <= n_max and n ** d + min(c1, c2) <= hi:
        alive[n] = True
        n += 1
    hits = []
    for n in np.flatnonzero(alive).tolist():
        v = n ** d
        if is_prime_u64(v + c1) and is_prime_u64(v + c2):
            hits.append(n)
    return np.asarray(hits, dtype=np.int64)
