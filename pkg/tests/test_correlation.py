import math

import gmpy2
import numpy as np
import pytest

from spectralprimes.arith import prime_power_base
from spectralprimes.correlation import (
    CUBIC,
    FAMILIES,
    QUADRATIC,
    QUARTIC,
    CountRecord,
    PairFamily,
    lambda_correlation,
    lambda_large,
    lambda_poly_sum,
    mean_value_estimate,
    pair_count,
    poly_twin_count,
    poly_twin_counts,
    ramanujan_coefficient_estimate,
    truncated_kernel,
    wk_empirical,
)
from spectralprimes.ramanujan import csum
from spectralprimes.series import f_series_partial_sums
from spectralprimes.sieve import BudgetExceeded

log = math.log


def lam(n):
    p = prime_power_base(n)
    return log(p) if p else 0.0


def test_family_shapes():
    assert (QUADRATIC.degree, QUADRATIC.c1, QUADRATIC.c2) == (2, 1, 3)
    assert (CUBIC.degree, CUBIC.c1, CUBIC.c2) == (3, 2, 4)
    assert (QUARTIC.degree, QUARTIC.c1, QUARTIC.c2) == (4, 1, 3)
    lin = PairFamily.linear(6)
    assert lin.shift == 6 and not lin.is_polynomial
    with pytest.raises(ValueError):
        PairFamily.linear(0)


def test_lambda_correlation_examples():
    assert lambda_correlation(2, 2) == pytest.approx(log(2) ** 2, abs=1e-15)
    want = log(2) ** 2 + log(3) * log(5) + log(5) * log(7) + log(7) * log(3) + log(3) * log(11)
    assert lambda_correlation(10, 2) == pytest.approx(want, abs=1e-14)
    assert lambda_correlation(0.5, 2) == 0.0


@pytest.mark.parametrize("m", [1, 2, 3, 6, 30])
def test_lambda_correlation_brute(m):
    x = 5000
    brute = math.fsum(lam(n) * lam(n + m) for n in range(1, x + 1))
    assert lambda_correlation(x, m) == pytest.approx(brute, rel=1e-13)
    assert lambda_correlation(x, m, segment=777) == pytest.approx(brute, rel=1e-13)


def test_lambda_correlation_deterministic_across_threads():
    ref = lambda_correlation(3 * 10**5, 2, threads=1, segment=10**4)
    for t in (2, 4, 7):
        assert lambda_correlation(3 * 10**5, 2, threads=t, segment=10**4) == ref


def test_odd_shift_density_small():
    assert lambda_correlation(10**6, 1) / 10**6 < 0.05


def test_lambda_correlation_budget():
    with pytest.raises(BudgetExceeded):
        lambda_correlation(10**5, 2, memory_budget=100)
    with pytest.raises(ValueError):
        lambda_correlation(10, 0)


def test_pair_count_examples():
    assert pair_count(4, 2) == 0
    assert pair_count(10, 2) == 2
    assert pair_count(100, 2) == 8
    with pytest.raises(ValueError):
        pair_count(100, 3)


def test_pair_count_against_mr():
    x = 10**6
    flags = np.array([bool(gmpy2.is_prime(n)) for n in range(x + 1)])
    for two_k in (2, 4, 6, 210):
        brute = int(np.count_nonzero(flags[: x + 1 - two_k] & flags[two_k:]))
        assert pair_count(x, two_k) == brute
        assert pair_count(x, two_k, threads=3, segment=9999) == brute


def test_pair_count_monotone():
    counts = [pair_count(x, 2) for x in range(1, 3000, 7)]
    assert all(b >= a for a, b in zip(counts, counts[1:]))


def brute_poly(fam, x):
    n, c = 1, 0
    while fam.first(n) <= x:
        c += bool(gmpy2.is_prime(fam.first(n)) and gmpy2.is_prime(fam.second(n)))
        n += 1
    return c


def test_poly_examples():
    assert (poly_twin_count(QUADRATIC, 10**3).count, round(poly_twin_count(QUADRATIC, 10**3).ratio, 5)) == (4, 6.03579)
    assert (poly_twin_count(CUBIC, 10**3).count, round(poly_twin_count(CUBIC, 10**3).ratio, 5)) == (2, 9.54342)
    assert (poly_twin_count(QUARTIC, 10**3).count, round(poly_twin_count(QUARTIC, 10**3).ratio, 5)) == (1, 8.48543)


@pytest.mark.parametrize("fam", list(FAMILIES.values()), ids=list(FAMILIES))
def test_poly_against_brute(fam):
    xs = [1, 2, 10, 99, 1000, 12345, 10**5, 654321, 10**6]
    for rec in poly_twin_counts(fam, xs):
        assert rec.count == brute_poly(fam, rec.x)


def test_poly_boundaries():
    assert poly_twin_count(QUADRATIC, 5).count == 1  # n = 2 gives (5, 7)
    assert poly_twin_count(QUADRATIC, 4).count == 0
    with pytest.raises(ValueError):
        poly_twin_count(QUADRATIC, 10**16 + 1)
    with pytest.raises(ValueError):
        poly_twin_count(PairFamily.linear(2), 100)
    assert poly_twin_count(QUARTIC, 10**16).count == 63


def test_ratio_recomputes_count():
    for fam in FAMILIES.values():
        for rec in poly_twin_counts(fam, [10**3, 10**5, 10**8]):
            back = rec.ratio * rec.x ** (1 / fam.degree) / log(rec.x) ** 2
            assert back == pytest.approx(rec.count, rel=1e-12)
    assert CountRecord.normalize(4, 1000, 2) == pytest.approx(4 * log(1000) ** 2 / math.sqrt(1000))


def test_lambda_large():
    for v in (2, 4, 97, 3**20, 2**62, 6, 10**16 + 1):
        p = prime_power_base(v)
        assert lambda_large(v) == (log(p) if p else 0.0)


def test_lambda_poly_sum_small():
    # n = 1 contributes Lambda(2) Lambda(4); n = 6 gives 37 * 39 with Lambda(39) = 0
    want = log(2) ** 2 + log(5) * log(7) + log(17) * log(19)
    assert lambda_poly_sum(QUADRATIC, 50) == pytest.approx(want, abs=1e-14)
    brute = math.fsum(lam(n * n + 1) * lam(n * n + 3) for n in range(1, 8))
    assert lambda_poly_sum(QUADRATIC, 50) == pytest.approx(brute, abs=1e-14)
    assert lambda_poly_sum(QUADRATIC, 1) == 0.0
    assert lambda_poly_sum(CUBIC, 2) == 0.0


def test_lambda_poly_sum_single_weighted():
    x = 10**6
    v = lambda_poly_sum(QUADRATIC, x, "single")
    brute = math.fsum(lam(n * n + 1) for n in range(1, 1000))
    assert v == pytest.approx(brute, rel=1e-13)
    assert abs(v / math.sqrt(x) / 1.3728 - 1) < 0.25
    with pytest.raises(ValueError):
        lambda_poly_sum(QUADRATIC, x, "double")


def test_mean_value_examples():
    assert abs(mean_value_estimate(3, 3, 10**5) - 2) <= 0.01
    assert abs(mean_value_estimate(2, 3, 10**5)) <= 0.01
    for x in (1, 7, 1000):
        assert mean_value_estimate(1, 1, x) == 1.0


def test_orthogonality_grid():
    from spectralprimes.arith import totient

    for q in range(1, 11):
        for r in range(1, 11):
            want = totient(q) if q == r else 0
            assert abs(mean_value_estimate(q, r, 10**5) - want) <= 0.01


def test_mean_value_brute():
    x = 997
    brute = sum(csum(4, n) * csum(6, n) for n in range(1, x + 1)) / x
    assert mean_value_estimate(4, 6, x) == brute


def test_coefficient_estimate():
    c3 = lambda n: csum(3, int(n))
    assert abs(ramanujan_coefficient_estimate(c3, 3, 10**5) - 1) <= 0.01
    assert abs(ramanujan_coefficient_estimate(c3, 2, 10**5)) <= 0.01
    assert ramanujan_coefficient_estimate(lambda n: np.ones_like(n, dtype=float), 1, 1234) == 1.0
    assert ramanujan_coefficient_estimate(lambda n: 1.0, 1, 10) == 1.0


def test_truncated_kernel_matches_series():
    n = np.arange(1, 60, dtype=np.int64)
    got = truncated_kernel(n, 1.7, 40)
    want = [f_series_partial_sums(int(k), 1.7, 40)[-1] for k in n]
    assert np.allclose(got, want, atol=1e-13)


def test_wk_examples():
    for m, s, x in [(2, 2.0, 100), (7, 1.3, 999)]:
        lhs, rhs = wk_empirical(m, s, 1, x)
        assert lhs == 1.0 and rhs == 1.0
    lhs, rhs = wk_empirical(2, 2.0, 10, 10**5)
    assert abs(lhs - rhs) <= 0.01 * abs(rhs)
    with pytest.raises(ValueError):
        wk_empirical(2, 1.0, 10, 100)


def test_wk_doubling_rate():
    for m in (2, 4, 6):
        xs = (10007, 20011, 30011, 40009, 50021)
        errs = [abs(np.subtract(*wk_empirical(m, 2.0, 10, x))) for x in xs]
        errs2 = [abs(np.subtract(*wk_empirical(m, 2.0, 10, 2 * x))) for x in xs]
        assert np.mean(errs2) <= 0.5 * np.mean(errs)
