"""Brute-force identity checks, small enough to run from the command line."""
from __future__ import annotations

import math

from .arith import divisor_sum, is_prime, totient
from .correlation import FAMILIES, mean_value_estimate, pair_count, poly_twin_count
from .ramanujan import (
    csum,
    csum_divisor,
    csum_exponential,
    csum_prime_power,
    divisor_identity_sum,
    sqrt_identity_sum,
)
from .sieve import is_prime_u64, primes_up_to


def _three_way(limit=60):
    for q in range(1, limit + 1):
        for n in range(1, limit + 1):
            a = csum(q, n)
            if a != csum_divisor(q, n) or a != csum_exponential(q, n):
                return f"q={q} n={n}"
    return None


def _multiplicative(limit=40):
    for q1 in range(1, limit + 1):
        for q2 in range(1, limit + 1):
            if math.gcd(q1, q2) != 1:
                continue
            for n in range(1, 61):
                if csum(q1 * q2, n) != csum(q1, n) * csum(q2, n):
                    return f"q1={q1} q2={q2} n={n}"
    return None


def _odd_cases(limit=99):
    for m in range(1, limit + 1, 2):
        for n in range(1, limit + 1, 2):
            if csum(2 * m, n) != -csum(m, n):
                return f"2m: m={m} n={n}"
            for v in (2, 3, 4):
                if csum(2**v * m, n) != 0:
                    return f"2^{v}m: m={m} n={n}"
    return None


def _prime_powers():
    for p in (2, 3, 5, 7, 11, 13):
        for v in range(1, 5):
            for n in range(1, 200):
                if csum_prime_power(p, v, n) != csum(p**v, n):
                    return f"p={p} v={v} n={n}"
    return None


def _sqrt_identity(limit=500):
    for n in range(1, limit + 1):
        r = math.isqrt(n)
        if sqrt_identity_sum(n) != (r if r * r == n else 0):
            return f"n={n}"
    return None


def _divisor_identity(limit=120):
    for n in range(1, limit + 1):
        for m in range(1, limit + 1):
            if divisor_identity_sum(n, m) != (n if m % n == 0 else 0):
                return f"n={n} m={m}"
    return None


def _sharp_bound(limit=200):
    for q in range(1, limit + 1):
        for n in range(1, limit + 1):
            if abs(csum(q, n)) > divisor_sum(math.gcd(q, n)):
                return f"q={q} n={n}"
    return None


def _orthogonality(limit=6, x=20000):
    for q in range(1, limit + 1):
        for r in range(1, limit + 1):
            want = totient(q) if q == r else 0
            if abs(mean_value_estimate(q, r, x) - want) > 0.01:
                return f"q={q} r={r}"
    return None


def _sieve_vs_mr(limit=20000):
    table = primes_up_to(limit)
    for n in range(limit + 1):
        if (n in table) != is_prime_u64(n):
            return f"n={n}"
    return None


def _pairs_vs_mr(limit=20000):
    brute = sum(1 for p in range(2, limit - 1) if is_prime(p) and is_prime(p + 2))
    got = pair_count(limit, 2)
    return None if got == brute else f"sieve {got} brute {brute}"


def _poly_vs_brute(limit=10**5):
    for fam in FAMILIES.values():
        brute = 0
        n = 1
        while fam.first(n) <= limit:
            if is_prime(fam.first(n)) and is_prime(fam.second(n)):
                brute += 1
            n += 1
        got = poly_twin_count(fam, limit).count
        if got != brute:
            return f"{fam.name}: {got} vs {brute}"
    return None


CHECKS = (
    ("csum three-way", _three_way),
    ("csum multiplicative in q", _multiplicative),
    ("csum odd cases", _odd_cases),
    ("csum prime powers", _prime_powers),
    ("sqrt identity", _sqrt_identity),
    ("divisor identity", _divisor_identity),
    ("csum divisor bound", _sharp_bound),
    ("orthogonality", _orthogonality),
    ("sieve vs miller-rabin", _sieve_vs_mr),
    ("pair count vs brute", _pairs_vs_mr),
    ("polynomial pairs vs brute", _poly_vs_brute),
)


def run():
    """Yield (name, failure-or-None) for every check."""
    for name, fn in CHECKS:
        yield name, fn()
