"""Exact integer arithmetic functions.

Everything here works on Python ints and is exact; the only floating point
value produced is the logarithm returned by :func:`von_mangoldt`.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from ._backend import kernels

MAX_INPUT = 2**63 - 1
_TRIAL_LIMIT = 10**6


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization ``value = prod(p**e for p, e in factors)``."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"non-canonical factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors multiply to {prod}, not {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def _check_positive(n, name="n"):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {type(n).__name__}")
    n = int(n)
    if n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n}")
    return n


@lru_cache(maxsize=1)
def _trial_primes():
    limit = _TRIAL_LIMIT
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).tolist()


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64."""
    return kernels.is_prime_u64(n)


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict, rng: random.Random):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, rng)
        _split(r, out, rng)
        return
    d = _pollard_brent(n, rng)
    _split(d, out, rng)
    _split(n // d, out, rng)


def factorize(n: int) -> Factorization:
    """Prime factorization of 1 <= n <= 2**63 - 1.

    Trial division by the primes below 10**6, then Pollard-Brent on the
    remaining cofactor. The rho walk uses a fixed seed, so results and
    running time are reproducible.
    """
    n = _check_positive(n)
    if n > MAX_INPUT:
        raise ValueError("n exceeds 2**63 - 1")
    return _factorize(n)


@lru_cache(maxsize=1 << 16)
def _factorize(n: int) -> Factorization:
    found = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < _TRIAL_LIMIT**2 or is_prime(m):
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found, random.Random(m))
    return Factorization(n, tuple(sorted(found.items())))


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n: int) -> int:
    """Euler's totient n * prod(1 - 1/p)."""
    f = factorize(n)
    result = n
    for p, _ in f:
        result = result // p * (p - 1)
    return result


def prime_power_base(n: int) -> int | None:
    """The prime p when n = p**k with k >= 1, else None."""
    f = factorize(n)
    if len(f) == 1:
        return f.factors[0][0]
    return None


def von_mangoldt(n: int) -> float:
    p = prime_power_base(n)
    return math.log(p) if p is not None else 0.0


def divisors(n: int) -> list[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def divisor_sum(n: int) -> int:
    result = 1
    for p, e in factorize(n):
        result *= (p ** (e + 1) - 1) // (p - 1)
    return result


def divisor_count(n: int) -> int:
    result = 1
    for _, e in factorize(n):
        result *= e + 1
    return result


def omega(n: int) -> int:
    return len(factorize(n))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n."""
    n = int(n)
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a = int(a) % n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_kth_power_residue(a: int, k: int, p: int) -> bool:
    """Whether x**k = a (mod p) has a solution, for an odd prime p not dividing a."""
    k = _check_positive(k, "k")
    p = int(p)
    if p < 3 or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if a % p == 0:
        raise ValueError(f"{p} divides {a}")
    g = math.gcd(k, p - 1)
    return pow(a % p, (p - 1) // g, p) == 1


def poly_eval(coeffs, t: int) -> int:
    """Evaluate a polynomial given by ascending coefficients (c0, c1, ...)."""
    value = 0
    for c in reversed(coeffs):
        value = value * t + int(c)
    return value


def fixed_divisor(coeffs) -> int:
    """gcd of f(Z) for the integer polynomial with ascending coefficients.

    Equal to gcd(f(0), ..., f(deg f)): every value is an integer combination of
    these through the Newton forward-difference expansion.
    """
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has no fixed divisor")
    deg = len(coeffs) - 1
    return reduce(math.gcd, (abs(poly_eval(coeffs, t)) for t in range(deg + 1)))


def integer_root(v: int, k: int) -> int:
    """floor(v ** (1/k)) for v >= 0."""
    if v < 2 or k == 1:
        return v
    r = int(round(v ** (1.0 / k)))
    while r**k > v:
        r -= 1
    while (r + 1) ** k <= v:
        r += 1
    return r


def prime_power_base_large(v: int) -> int | None:
    """Like :func:`prime_power_base` but without factoring; for v < 2**64.

    Tests primality, then peels perfect powers with prime exponents
    (v = r**q with q prime, recursing on r), covering every k <= 63.
    """
    v = int(v)
    if v < 2:
        return None
    if is_prime(v):
        return v
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61):
        if 2**q > v:
            break
        r = integer_root(v, q)
        if r**q == v:
            return prime_power_base_large(r)
    return None
