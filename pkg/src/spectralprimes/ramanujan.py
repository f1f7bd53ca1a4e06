"""Ramanujan sums c_q(n) and the classical identities built from them."""
from __future__ import annotations

import math

import numpy as np

from .arith import _check_positive, divisors, factorize, mobius, totient

EXPONENTIAL_MAX_Q = 10**5
_ROUNDING_RESIDUAL = 1e-6


def csum(q: int, n: int) -> int:
    """c_q(n) via Hoelder's formula mu(q/d) phi(q) / phi(q/d), d = gcd(n, q)."""
    q = _check_positive(q, "q")
    n = _check_positive(n, "n")
    d = math.gcd(n, q)
    m = mobius(q // d)
    if m == 0:
        return 0
    return m * (totient(q) // totient(q // d))


def csum_divisor(q: int, n: int) -> int:
    """c_q(n) as the divisor sum over d | gcd(n, q) of mu(q/d) d."""
    q = _check_positive(q, "q")
    n = _check_positive(n, "n")
    return sum(mobius(q // d) * d for d in divisors(math.gcd(n, q)))


def csum_exponential(q: int, n: int) -> int:
    """c_q(n) from its definition as a sum of cos(2 pi k n / q) over units k.

    Rounds to the nearest integer and raises if the float sum is further
    than 1e-6 from it.
    """
    q = _check_positive(q, "q")
    n = _check_positive(n, "n")
    if q > EXPONENTIAL_MAX_Q:
        raise ValueError(f"exponential form is limited to q <= {EXPONENTIAL_MAX_Q}")
    k = np.arange(1, q + 1, dtype=np.int64)
    k = k[np.gcd(k, q) == 1]
    # reduce k*n mod q first so the cosine argument stays in [0, 2 pi)
    total = math.fsum(np.cos(2.0 * np.pi * ((k * (n % q)) % q) / q))
    value = round(total)
    if abs(total - value) >= _ROUNDING_RESIDUAL:
        raise ArithmeticError(
            f"exponential sum for c_{q}({n}) = {total!r} is not near an integer"
        )
    return int(value)


def csum_prime_power(p: int, v: int, n: int) -> int:
    """c_{p^v}(n) from the three-case prime-power table."""
    u = 0
    while u < v and n % p ** (u + 1) == 0:
        u += 1
    if u == v:
        return p ** (v - 1) * (p - 1)
    if u == v - 1:
        return -(p ** (v - 1))
    return 0


def csum_table(q_max: int, n_max: int) -> np.ndarray:
    """Matrix C[q, n] = c_q(n) for 1 <= q <= q_max, 1 <= n <= n_max (row/col 0 unused).

    Built with Hoelder's formula from sieved mu and phi tables.
    """
    mu, phi = mobius_totient_tables(q_max)
    table = np.zeros((q_max + 1, n_max + 1), dtype=np.int64)
    n = np.arange(1, n_max + 1, dtype=np.int64)
    for q in range(1, q_max + 1):
        d = np.gcd(n, q)
        r = q // d
        table[q, 1:] = mu[r] * (phi[q] // phi[r])
    return table


def mobius_totient_tables(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Sieved arrays mu[0..limit], phi[0..limit] (index 0 unused)."""
    limit = max(int(limit), 1)
    mu = np.ones(limit + 1, dtype=np.int64)
    phi = np.arange(limit + 1, dtype=np.int64)
    is_comp = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if is_comp[p]:
            continue
        is_comp[2 * p :: p] = True
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
        phi[p::p] -= phi[p::p] // p
    mu[0] = 0
    return mu, phi


def sqrt_identity_sum(n: int) -> int:
    """Sum over d | n of c_d(n/d); equals sqrt(n) for squares and 0 otherwise."""
    n = _check_positive(n)
    return sum(csum(d, n // d) for d in divisors(n))


def divisor_identity_sum(n: int, m: int) -> int:
    """Sum over d | n of c_d(m); equals n when n | m and 0 otherwise."""
    n = _check_positive(n)
    m = _check_positive(m, "m")
    return sum(csum(d, m) for d in divisors(n))
