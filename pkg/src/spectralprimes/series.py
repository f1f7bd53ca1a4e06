"""The kernel f(n, s) = sum_q mu(q) c_q(n) / (q**(s-1) phi(q)) on the real axis.

Two routes are provided: the truncated Ramanujan series (:func:`f_series`)
and the Euler product (:func:`f_product`). Around them sit the pieces of
the factorisation f = zeta * A * B and the s -> 1 limit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._numeric import TruncatedValue, check_tolerance, prime_sum_tail, product_of_increments
from .arith import factorize
from .ramanujan import mobius_totient_tables
from .sieve import prime_array


class DivergenceError(ArithmeticError):
    """The requested value is infinite (e.g. f(1, 1))."""


@dataclass(frozen=True)
class TruncationParams:
    series_cutoff: int = 10**4
    product_cutoff: int = 10**6
    tail_tolerance: float = 1e-2

    def __post_init__(self):
        if self.series_cutoff < 1:
            raise ValueError("series_cutoff must be >= 1")
        if self.product_cutoff < 2:
            raise ValueError("product_cutoff must be >= 2")
        if not self.tail_tolerance > 0:
            raise ValueError("tail_tolerance must be positive")


@dataclass(frozen=True)
class EvalPoint:
    n: int
    s: float

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


@lru_cache(maxsize=4)
def _tables(limit: int):
    return mobius_totient_tables(limit)


@lru_cache(maxsize=4)
def _primes(limit: int) -> np.ndarray:
    return prime_array(limit)


def series_terms(n: int, s: float, Q: int) -> np.ndarray:
    """The terms mu(q) c_q(n) / (q**(s-1) phi(q)) for q = 1..Q."""
    mu, phi = _tables(Q)
    q = np.arange(1, Q + 1, dtype=np.int64)
    d = np.gcd(q, np.int64(n))
    r = q // d
    c = mu[r] * (phi[q] // phi[r])
    return mu[q] * c / (q.astype(np.float64) ** (s - 1.0) * phi[q])


def f_series(point: EvalPoint, trunc: TruncationParams) -> float:
    """Partial sum of the Ramanujan series over q <= Q."""
    if point.s < 1:
        raise ValueError("f_series needs s >= 1")
    return math.fsum(series_terms(point.n, point.s, trunc.series_cutoff))


def f_series_partial_sums(n: int, s: float, Q: int) -> np.ndarray:
    """All partial sums S_1..S_Q (cumulative, ascending q)."""
    return np.cumsum(series_terms(n, s, Q))


def f_product(point: EvalPoint, trunc: TruncationParams, complete_tail: bool = True) -> TruncatedValue:
    """Euler product prod_{p|n}(1 - p**(1-s)) prod_{p !| n}(1 + p**(1-s)/(p-1)).

    Primes dividing n are always included exactly; the second product runs
    over p <= P. With ``complete_tail`` the missing factors p > P are
    restored through the prime-sum tail estimate, without which the product
    converges far too slowly near s = 1. ``tail_bound`` is an absolute error
    bound on the returned value.
    """
    n, s = point.n, float(point.s)
    if n < 2:
        raise ValueError("f_product needs n >= 2")
    if s <= 1:
        raise ValueError("f_product needs s > 1 (at s = 1 use f_limit_at_1)")
    P = trunc.product_cutoff
    divs = np.array(factorize(n).primes, dtype=np.float64)
    p = _primes(P).astype(np.float64)
    coprime = p[np.isin(p, divs, invert=True)]
    inc = np.concatenate((-(divs ** (1.0 - s)), coprime ** (1.0 - s) / (coprime - 1.0)))
    value = product_of_increments(inc)
    est, err = prime_sum_tail(s, P)
    big = divs[divs > P]
    # divisors of n above P are not part of the coprime tail
    est -= math.fsum(np.log1p(big ** (1.0 - s) / (big - 1.0)))
    extra = 1.0 / P  # sum over p > P of p**-s / (p - 1) and the log1p correction
    if complete_tail:
        value *= math.exp(est)
        bound = abs(value) * math.expm1(err + extra)
    else:
        bound = abs(value) * math.expm1(est + err + extra)
    return check_tolerance(TruncatedValue(value, bound, P), trunc.tail_tolerance)


def a1(n: int) -> float:
    """prod over distinct p | n of ((p - 1) / p) log p."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return math.prod((p - 1) / p * math.log(p) for p in factorize(n).primes)


def f_limit_at_1(n: int) -> float:
    """lim f(n, s) as s -> 1+: a1(n) for prime powers, 0 when omega(n) >= 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        raise DivergenceError("f(1, s) diverges as s -> 1")
    if len(factorize(n)) == 1:
        return a1(n)
    return 0.0


def a_factor(n: int, s: float) -> float:
    """A(n, s) = prod_{p|n} (p-1)(p**(s-1) - 1) / (p**s - p**(s-1) + 1); finite, exact."""
    out = 1.0
    for p in factorize(n).primes:
        out *= (p - 1) * (p ** (s - 1) - 1) / (p**s - p ** (s - 1) + 1)
    return out


def b_product(s: float, trunc: TruncationParams) -> TruncatedValue:
    """B(s) = prod_p (1 + 1/(p**(s-1)(p-1))) (1 - p**-s), truncated at P.

    Each factor equals 1 + x(1 - x)/(p(p - 1)) with x = p**(1-s), which is
    what gets multiplied; at s = 1 every factor is exactly 1.
    """
    s = float(s)
    if s < 1:
        raise ValueError("b_product needs s >= 1")
    P = trunc.product_cutoff
    p = _primes(P).astype(np.float64)
    x = p ** (1.0 - s)
    value = product_of_increments(x * (1.0 - x) / (p * (p - 1.0)))
    bound = abs(value) * math.expm1(1.0 / (4.0 * P))
    return check_tolerance(TruncatedValue(value, bound, P), trunc.tail_tolerance)


# B_2k / (2k)! for k = 1..8
_EM_COEFFS = tuple(
    b / math.factorial(2 * k)
    for k, b in enumerate(
        (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510), start=1
    )
)


def zeta_real(s: float, N: int = 20) -> float:
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation."""
    s = float(s)
    if s <= 1:
        raise ValueError("zeta_real needs s > 1")
    head = math.fsum(k ** -s for k in range(1, N))
    terms = [N ** (1 - s) / (s - 1), 0.5 * N**-s]
    rising = s  # s (s+1) ... (s + 2k - 2)
    for k, c in enumerate(_EM_COEFFS, start=1):
        terms.append(c * rising * N ** (-s - 2 * k + 1))
        rising *= (s + 2 * k - 1) * (s + 2 * k)
    return head + math.fsum(terms)


def f_derivative_numeric(point: EvalPoint, h: float, trunc: TruncationParams) -> float:
    """Central difference (f(s + h) - f(s - h)) / 2h of the completed Euler product."""
    if h <= 0:
        raise ValueError("step must be positive")
    if point.s - h <= 1:
        raise ValueError("the difference stencil must stay to the right of s = 1")
    hi = f_product(EvalPoint(point.n, point.s + h), trunc)
    lo = f_product(EvalPoint(point.n, point.s - h), trunc)
    return (float(hi) - float(lo)) / (2.0 * h)


def cesaro_block_means(n: int, Q: int, block: int = 1000) -> np.ndarray:
    """Means of the s = 1 partial sums S_q over consecutive blocks of q."""
    sums = f_series_partial_sums(n, 1.0, Q)
    usable = (Q // block) * block
    return sums[:usable].reshape(-1, block).mean(axis=1)
