"""Lambda-correlation sums, prime-pair counts and finite-x spectral experiments."""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .arith import integer_root, prime_power_base_large
from .ramanujan import mobius_totient_tables
from .sieve import (
    DEFAULT_MEMORY_BUDGET,
    BudgetExceeded,
    base_primes_for,
    default_threads,
    lambda_base_segment,
    odd_flags,
)

SEGMENT = 2**20
POLY_MAX_X = 10**16


@dataclass(frozen=True)
class PairFamily:
    """Which pairs are counted: (n + 0, n + shift) or (n**d + c1, n**d + c2)."""

    name: str
    degree: int = 1
    c1: int = 0
    c2: int = 0

    @classmethod
    def linear(cls, shift: int) -> "PairFamily":
        if shift < 1:
            raise ValueError("shift must be positive")
        return cls("linear", 1, 0, int(shift))

    @property
    def shift(self) -> int:
        return self.c2 - self.c1

    @property
    def is_polynomial(self) -> bool:
        return self.name != "linear"

    def first(self, n: int) -> int:
        return n**self.degree + self.c1

    def second(self, n: int) -> int:
        return n**self.degree + self.c2


QUADRATIC = PairFamily("quadratic", 2, 1, 3)
CUBIC = PairFamily("cubic", 3, 2, 4)
QUARTIC = PairFamily("quartic", 4, 1, 3)
FAMILIES = {"quadratic": QUADRATIC, "cubic": CUBIC, "quartic": QUARTIC}


@dataclass(frozen=True)
class CountRecord:
    x: int
    count: int
    ratio: float
    family: str
    runtime_ms: float | None = None

    @staticmethod
    def normalize(count: int, x: int, degree: int) -> float:
        """count * (log x)**2 / x**(1/degree)."""
        return count * math.log(x) ** 2 / x ** (1.0 / degree)


def _check_budget(nbytes: int, budget: int):
    if nbytes > budget:
        raise BudgetExceeded(f"segment needs {nbytes} bytes, budget is {budget}")


def _segments(x: int, segment: int):
    lo = 1
    while lo <= x:
        hi = min(lo + segment, x + 1)
        yield lo, hi
        lo = hi


def _map_ordered(fn, items, threads):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def lambda_correlation(
    x, m: int, threads: int | None = None, memory_budget: int = DEFAULT_MEMORY_BUDGET,
    segment: int = SEGMENT,
) -> float:
    """sum_{n <= x} Lambda(n) Lambda(n + m), streamed over fixed segments.

    Per-segment partial sums are correctly rounded and then reduced in
    ascending segment order, so the thread count does not change the result.
    """
    x = int(math.floor(x))
    m = int(m)
    if m < 1:
        raise ValueError("shift must be positive")
    if x < 1:
        return 0.0
    _check_budget(8 * (segment + m) * 3, memory_budget)
    base = base_primes_for(x + m + 1)

    def run(seg):
        lo, hi = seg
        b = lambda_base_segment(lo, hi + m, base)
        left = b[: hi - lo]
        right = b[m : m + hi - lo]
        nz = (left > 0) & (right > 0)
        if not nz.any():
            return 0.0
        return math.fsum(
            np.log(left[nz].astype(np.float64)) * np.log(right[nz].astype(np.float64))
        )

    parts = _map_ordered(run, list(_segments(x, segment)), threads or default_threads())
    return math.fsum(parts)


def pair_count(
    x, two_k: int, threads: int | None = None, memory_budget: int = DEFAULT_MEMORY_BUDGET,
    segment: int = SEGMENT,
) -> int:
    """Number of primes p with p + 2k <= x and p + 2k prime."""
    x = int(math.floor(x))
    two_k = int(two_k)
    if two_k < 1:
        raise ValueError("shift must be positive")
    if two_k % 2:
        raise ValueError("pair counts need an even shift")
    if x < 5:
        return 0
    _check_budget(2 * (segment + two_k), memory_budget)
    last = x - two_k  # largest admissible p
    if last < 3:
        return 0
    base = base_primes_for(x + 1)
    k = two_k // 2

    def run(seg):
        lo, hi = seg
        start, flags = odd_flags(lo, min(hi + two_k, x + 1), base)
        n_left = (hi - start + 1) // 2
        left = flags[:n_left]
        right = flags[k : k + n_left]
        left = left[: right.size]
        return int(np.count_nonzero(left & right))

    parts = _map_ordered(run, list(_segments(last, segment)), threads or default_threads())
    return sum(parts)


def _poly_n_max(family: PairFamily, x: int) -> int:
    """Largest n >= 0 with n**d + c1 <= x."""
    if x < family.c1:
        return 0
    n = integer_root(x - family.c1, family.degree)
    return n


def poly_twin_hits(family: PairFamily, x) -> np.ndarray:
    """All n >= 1 with first(n) <= x and both polynomial values prime."""
    if not family.is_polynomial:
        raise ValueError("poly_twin_hits needs a polynomial family")
    x = int(x)
    if x > POLY_MAX_X:
        raise ValueError(f"x must not exceed {POLY_MAX_X} for polynomial families")
    n_max = _poly_n_max(family, x)
    return kernels.poly_twin_hits(family.degree, family.c1, family.c2, n_max)


def poly_twin_counts(family: PairFamily, xs) -> list[CountRecord]:
    """One CountRecord per threshold, from a single pass up to max(xs)."""
    xs = [int(v) for v in xs]
    if not xs:
        return []
    t0 = time.perf_counter()
    hits = poly_twin_hits(family, max(xs))
    elapsed = (time.perf_counter() - t0) * 1e3
    out = []
    for x in xs:
        n_max = _poly_n_max(family, x)
        count = int(np.searchsorted(hits, n_max, side="right"))
        out.append(CountRecord(x, count, CountRecord.normalize(count, x, family.degree), family.name, elapsed))
    return out


def poly_twin_count(family: PairFamily, x) -> CountRecord:
    return poly_twin_counts(family, [x])[0]


def linear_pair_record(x, two_k: int, threads: int | None = None) -> CountRecord:
    t0 = time.perf_counter()
    count = pair_count(x, two_k, threads)
    elapsed = (time.perf_counter() - t0) * 1e3
    x = int(x)
    return CountRecord(x, count, CountRecord.normalize(count, x, 1), f"linear{two_k}", elapsed)


def lambda_large(v: int) -> float:
    """Lambda(v) for 1 <= v < 2**63 without factoring."""
    p = prime_power_base_large(v)
    return math.log(p) if p is not None else 0.0


def lambda_poly_sum(family: PairFamily, x, weighting: str = "pair") -> float:
    """sum over n >= 1 with first(n) <= x of Lambda(first(n)) [* Lambda(second(n))].

    ``weighting`` is "pair" for the product of both values or "single" for
    the first polynomial alone.
    """
    if not family.is_polynomial:
        raise ValueError("lambda_poly_sum needs a polynomial family")
    x = int(x)
    if x > POLY_MAX_X:
        raise ValueError(f"x must not exceed {POLY_MAX_X} for polynomial families")
    if weighting not in ("pair", "single"):
        raise ValueError("weighting must be 'pair' or 'single'")
    terms = []
    for n in range(1, _poly_n_max(family, x) + 1):
        a = lambda_large(family.first(n))
        if a == 0.0:
            continue
        if weighting == "single":
            terms.append(a)
        else:
            b = lambda_large(family.second(n))
            if b:
                terms.append(a * b)
    return math.fsum(terms)


def _csum_residues(q: int, mu, phi) -> np.ndarray:
    """c_q(n) for n = 0..q-1 (c_q(0) = phi(q)); periodic in n with period q."""
    n = np.arange(q, dtype=np.int64)
    d = np.gcd(n, q)
    r = q // d
    return mu[r] * (phi[q] // phi[r])


def _csum_along(q: int, n: np.ndarray, mu, phi) -> np.ndarray:
    return _csum_residues(q, mu, phi)[n % q]


def mean_value_estimate(q: int, r: int, x) -> float:
    """(1/x) sum_{n <= x} c_q(n) c_r(n), exact integer sum divided once."""
    x = int(math.floor(x))
    if q < 1 or r < 1 or x < 1:
        raise ValueError("q, r and x must be positive")
    mu, phi = mobius_totient_tables(max(q, r))
    n = np.arange(1, x + 1, dtype=np.int64)
    total = int(np.sum(_csum_along(q, n, mu, phi) * _csum_along(r, n, mu, phi)))
    return total / x


def ramanujan_coefficient_estimate(f, q: int, x) -> float:
    """(1/(phi(q) x)) sum_{n <= x} c_q(n) f(n).

    ``f`` is either a callable accepting an integer array n = 1..x, or a
    plain per-integer callable (evaluated elementwise).
    """
    x = int(math.floor(x))
    if q < 1 or x < 1:
        raise ValueError("q and x must be positive")
    mu, phi = mobius_totient_tables(q)
    n = np.arange(1, x + 1, dtype=np.int64)
    try:
        values = np.asarray(f(n), dtype=np.float64)
        if values.shape != n.shape:
            raise TypeError
    except (TypeError, ValueError):
        values = np.fromiter((f(int(k)) for k in n), dtype=np.float64, count=x)
    c = _csum_along(q, n, mu, phi).astype(np.float64)
    return math.fsum(c * values) / (int(phi[q]) * x)


def _kernel_coefficients(s: float, Q: int):
    mu, phi = mobius_totient_tables(Q)
    q = np.arange(1, Q + 1)
    a = mu[1:] / (q.astype(np.float64) ** (s - 1.0) * phi[1:])
    return a, mu, phi


def truncated_kernel(n: np.ndarray, s: float, Q: int) -> np.ndarray:
    """f_Q(n, s) = sum_{q <= Q} mu(q) c_q(n) / (q**(s-1) phi(q)) along an array of n."""
    a, mu, phi = _kernel_coefficients(s, Q)
    out = np.zeros(n.shape, dtype=np.float64)
    for q in range(1, Q + 1):
        if a[q - 1] != 0.0:
            out += a[q - 1] * _csum_along(q, n, mu, phi)
    return out


def wk_empirical(m: int, s: float, Q: int, x) -> tuple[float, float]:
    """Both sides of the truncated Wiener-Khintchine identity.

    lhs = (1/x) sum_{n <= x} f_Q(n) f_Q(n + m); rhs = sum_{q <= Q} a_q**2 c_q(m).
    """
    x = int(math.floor(x))
    if s <= 1:
        raise ValueError("s must exceed 1")
    n = np.arange(1, x + m + 1, dtype=np.int64)
    f = truncated_kernel(n, s, Q)
    lhs = math.fsum(f[:x] * f[m : m + x]) / x
    a, mu, phi = _kernel_coefficients(s, Q)
    cm = np.array([_csum_residues(q, mu, phi)[m % q] for q in range(1, Q + 1)], dtype=np.float64)
    rhs = math.fsum(a**2 * cm)
    return lhs, rhs
