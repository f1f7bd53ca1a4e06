"""The spectrum F(sigma) of the kernel's autocorrelation and the density constants.

All products run over primes in ascending order and are accumulated in the
log domain with a correctly rounded sum, so a given cutoff always produces
the same float.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._numeric import TruncatedValue, prime_sum_tail, product_of_increments
from .arith import factorize, is_kth_power_residue, jacobi, totient
from .ramanujan import mobius_totient_tables
from .sieve import prime_array

SWEEP_CUTOFF = math.ceil(1e4 * math.log(1e4))  # 92104


@dataclass(frozen=True)
class SpectrumSpec:
    m: int
    sigma: float
    prime_cutoff: int = 10**6

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("shift m must be positive")
        if self.prime_cutoff < 2:
            raise ValueError("prime_cutoff must be >= 2")


# residue count -> rho(p); quadratic values follow from counting, the others
# are the published tables taken as given
RHO_TABLES = {2: (0, 2, 4), 3: (0, 2, 6), 4: (0, 2, 4)}


@dataclass(frozen=True)
class ResiduePairSpec:
    residue_set: tuple[int, ...]
    power: int
    prefactor: float
    first_prime: int
    prime_cutoff: int = 10**6
    rho_table: tuple[int, ...] | None = None
    exact_rho: bool = False

    def __post_init__(self):
        if not self.residue_set:
            raise ValueError("residue_set must be nonempty")
        if self.power < 2:
            raise ValueError("power must be >= 2")
        if not self.prefactor > 0:
            raise ValueError("prefactor must be positive")
        if self.rho_table is None and not self.exact_rho:
            if self.power not in RHO_TABLES:
                raise ValueError(f"no rho table known for power {self.power}")
            object.__setattr__(self, "rho_table", RHO_TABLES[self.power])

    def polynomial_constants(self) -> tuple[int, ...]:
        """Constant terms c with x**power + c vanishing where x**power = a."""
        return tuple(-a for a in self.residue_set)


QUADRATIC_TWIN = ResiduePairSpec((-1, -3), 2, 3.0, 5)
CUBIC_TWIN = ResiduePairSpec((-2, -4), 3, 2.0, 5)
QUARTIC_TWIN = ResiduePairSpec((-1, -3), 4, 1.0, 2)


@lru_cache(maxsize=4)
def _primes(limit: int) -> np.ndarray:
    return prime_array(limit)


def _primes_f(limit: int) -> np.ndarray:
    return _primes(limit).astype(np.float64)


def F_sigma(spec: SpectrumSpec) -> TruncatedValue:
    """prod_{p|m}(1 + 1/(p**(2s-2)(p-1))) prod_{p !| m}(1 - 1/(p**(2s-2)(p-1)**2)), p <= P.

    Exactly 0 when a factor vanishes (odd m at sigma = 1). For sigma < 1 the
    literal finite product is returned with an infinite tail bound.
    """
    m, sig, P = spec.m, float(spec.sigma), spec.prime_cutoff
    p = _primes_f(P)
    div = np.zeros(p.shape, dtype=bool)
    m_primes = factorize(m).primes
    for q in m_primes:
        div |= p == q
    w = p ** (2.0 - 2.0 * sig)
    inc = np.where(div, w / (p - 1.0), -w / (p - 1.0) ** 2)
    value = product_of_increments(inc)
    if value == 0.0:
        return TruncatedValue(0.0, 0.0, P)
    if sig < 1:
        return TruncatedValue(value, math.inf, P)
    # omitted log-factors: coprime ones sum to < 1/(P-1); divisors above P add < 1/(P-1) each
    n_big = sum(1 for q in m_primes if q > P)
    bound = abs(value) * math.expm1((1 + n_big) / (P - 1))
    return TruncatedValue(value, bound, P)


@lru_cache(maxsize=4)
def _tables(limit: int):
    return mobius_totient_tables(limit)


def F_series(spec: SpectrumSpec, Q: int) -> float:
    """sum_{q <= Q} mu(q)**2 c_q(m) / (q**(2 sigma - 2) phi(q)**2)."""
    if spec.sigma < 1:
        raise ValueError("F_series needs sigma >= 1")
    mu, phi = _tables(Q)
    q = np.arange(1, Q + 1, dtype=np.int64)
    r = q // np.gcd(q, np.int64(spec.m))
    c = mu[r] * (phi[q] // phi[r])
    qf = q.astype(np.float64)
    terms = mu[q] ** 2 * c / (qf ** (2.0 * spec.sigma - 2.0) * phi[q].astype(np.float64) ** 2)
    return math.fsum(terms)


def A_k(k: int, P: int = 10**6) -> TruncatedValue:
    """prod_{p|2k} p/(p-1) prod_{p !| 2k} (1 - 1/(p-1)**2): F at sigma = 1 with m = 2k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return F_sigma(SpectrumSpec(2 * k, 1.0, P))


def hl_pair_constant(k: int, P: int = 10**6) -> TruncatedValue:
    """2 prod_{p|k, p>2} (p-1)/(p-2) prod_{3<=p<=P} (1 - 1/(p-1)**2)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p = _primes_f(P)
    p = p[p >= 3]
    value = 2.0 * product_of_increments(-1.0 / (p - 1.0) ** 2)
    for q in factorize(k).primes:
        if q > 2:
            value *= (q - 1) / (q - 2)
    return TruncatedValue(value, abs(value) * math.expm1(1.0 / (P - 1)), P)


def singular_series_goldbach(N: int, P: int = 10**6) -> TruncatedValue:
    """prod_{p|N}(1 - 1/(p-1)**2) prod_{p !| N}(1 + 1/(p-1)**3) for odd N."""
    if N < 3 or N % 2 == 0:
        raise ValueError("N must be odd and >= 3")
    p = _primes_f(P)
    div = (N % _primes(P)) == 0
    inc = np.where(div, -1.0 / (p - 1.0) ** 2, 1.0 / (p - 1.0) ** 3)
    value = product_of_increments(inc)
    for q in factorize(N).primes:
        if q > P:
            value *= 1.0 - 1.0 / (q - 1) ** 2
    # coprime tail: sum over n > P of 1/(n-1)**3 < 1/(2 (P-1)**2)
    return TruncatedValue(value, abs(value) * math.expm1(0.5 / (P - 1) ** 2), P)


def singular_series(m: int, r: int, Q: int) -> float:
    """sum_{q <= Q} (mu(q)/phi(q))**r c_q(m)."""
    mu, phi = _tables(Q)
    q = np.arange(1, Q + 1, dtype=np.int64)
    rr = q // np.gcd(q, np.int64(m))
    c = mu[rr] * (phi[q] // phi[rr])
    return math.fsum((mu[q].astype(np.float64) / phi[q]) ** r * c)


def symbol_values(a: int, primes: np.ndarray) -> np.ndarray:
    """Jacobi symbols (a|p) for odd p, using that n -> (a|n) has period 4|a| on odd n."""
    period = 4 * abs(a)
    table = np.zeros(period, dtype=np.int64)
    for r in range(1, period, 2):
        table[r] = jacobi(a, r)
    return table[primes % period]


def _symbol_product(symbol_sum, P: int) -> TruncatedValue:
    p = _primes(P)
    p = p[p > 2]
    chi = symbol_sum(p).astype(np.float64)
    value = product_of_increments(-chi / (p.astype(np.float64) - 1.0))
    # conditionally convergent: no rigorous tail bound; log P / sqrt P is a heuristic scale
    return TruncatedValue(value, abs(value) * math.log(P) / math.sqrt(P), P)


def quadratic_prime_constant(P: int = 10**7) -> TruncatedValue:
    """prod_{2 < p <= P} (1 - (-1|p)/(p-1)), ascending primes."""
    if P < 3:
        raise ValueError("P must be >= 3")
    return _symbol_product(lambda p: symbol_values(-1, p), P)


def quartic_prime_constant(P: int = 10**7) -> TruncatedValue:
    """(1/4) prod_{2 < p <= P} (1 - ((-1|p) + (-2|p) + (2|p))/(p-1)), ascending primes."""
    if P < 3:
        raise ValueError("P must be >= 3")
    v = _symbol_product(
        lambda p: symbol_values(-1, p) + symbol_values(-2, p) + symbol_values(2, p), P
    )
    return TruncatedValue(0.25 * v, 0.25 * v.tail_bound, P)


def _rho_exact(p: int, spec: ResiduePairSpec) -> int:
    """Number of residues n mod p at which some n**k - a vanishes."""
    k = spec.power
    consts = spec.residue_set
    if p < 200:
        n = np.arange(p, dtype=np.int64)
        v = np.ones(p, dtype=np.int64)
        for _ in range(k):
            v = v * n % p
        hit = np.zeros(p, dtype=bool)
        for a in consts:
            hit |= (v - a) % p == 0
        return int(np.count_nonzero(hit))
    g = math.gcd(k, p - 1)
    total = 0
    seen = set()
    for a in consts:
        ar = a % p
        if ar in seen:
            continue
        seen.add(ar)
        if ar == 0:
            total += 1
        elif pow(ar, (p - 1) // g, p) == 1:
            total += g
    return total


def rho(p: int, spec: ResiduePairSpec) -> int:
    """Local root count used in the pair constant.

    Table mode: residue count -> published rho value, for p dividing no
    member of the residue set (nor any difference of two members). Those
    exceptional primes, p = 2, and ``exact_rho`` specs use the true count of
    roots of the product polynomial mod p.
    """
    p = int(p)
    consts = spec.residue_set
    special = p == 2 or any(a % p == 0 for a in consts) or any(
        (a - b) % p == 0 for i, a in enumerate(consts) for b in consts[i + 1 :]
    )
    if spec.exact_rho or special:
        return _rho_exact(p, spec)
    count = sum(1 for a in consts if is_kth_power_residue(a, spec.power, p))
    return spec.rho_table[count]


def polynomial_pair_constant(spec: ResiduePairSpec) -> TruncatedValue:
    """prefactor * prod_{first_prime <= p <= P} p (p - rho(p)) / (p - 1)**2."""
    p = _primes(spec.prime_cutoff)
    p = p[p >= spec.first_prime]
    rhos = np.fromiter((rho(int(q), spec) for q in p), dtype=np.float64, count=p.size)
    pf = p.astype(np.float64)
    inc = (pf * (pf - rhos) - (pf - 1.0) ** 2) / (pf - 1.0) ** 2
    value = spec.prefactor * product_of_increments(inc)
    P = spec.prime_cutoff
    return TruncatedValue(value, abs(value) * math.log(P) / math.sqrt(P), P)


def dirichlet_density_estimate(a: int, q: int, s: float, P: int = 10**7, complete_tail: bool = False) -> float:
    """(sum_{p <= P, p = a mod q} p**-s) / (sum_{p <= P} p**-s).

    With ``complete_tail`` the primes above P are added back through the
    prime-sum tail estimate, split evenly over the phi(q) residue classes.
    """
    if math.gcd(a, q) != 1:
        raise ValueError("a and q must be coprime")
    if s <= 1:
        raise ValueError("s must exceed 1")
    p = _primes(P)
    w = p.astype(np.float64) ** (-float(s))
    num = math.fsum(w[p % q == a % q])
    den = math.fsum(w)
    if complete_tail:
        tail, _ = prime_sum_tail(float(s), P)
        num += tail / totient(q)
        den += tail
    return num / den


def sweep_F(m: int, sigma_grid, P: int = SWEEP_CUTOFF) -> list[tuple[float, float]]:
    """(sigma, F(sigma)) for each grid point; sigma < 1 values depend on P."""
    grid = [float(s) for s in sigma_grid]
    if not grid:
        raise ValueError("sigma grid is empty")
    return [(s, float(F_sigma(SpectrumSpec(m, s, P)))) for s in grid]


def sweep_csv(m: int, sweep, P: int, precision: int = 10) -> str:
    buf = io.StringIO()
    buf.write(f"# spectrum sweep m={m} P={P}\n")
    if any(s < 1 for s, _ in sweep):
        buf.write("# values with sigma < 1 are truncation-dependent\n")
    buf.write("sigma,F\n")
    for s, v in sweep:
        buf.write(f"{s:.{precision}g},{v:.{precision}g}\n")
    return buf.getvalue()
