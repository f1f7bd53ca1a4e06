"""Shared numeric helpers: truncated values and sign-aware log-domain products."""
from __future__ import annotations

import math
import warnings

import numpy as np
from scipy.special import exp1


class TruncationWarning(UserWarning):
    """Reported tail bound exceeds the requested tolerance."""


class TruncatedValue(float):
    """A float that carries the bound on what truncation left out.

    ``tail_bound`` is an absolute bound (or, where documented, an estimate)
    on |exact - value|; ``cutoff`` is the truncation parameter used.
    """

    tail_bound: float
    cutoff: int

    def __new__(cls, value, tail_bound=0.0, cutoff=0):
        obj = super().__new__(cls, value)
        obj.tail_bound = float(tail_bound)
        obj.cutoff = int(cutoff)
        return obj

    def __repr__(self):
        return f"TruncatedValue({float(self)!r}, tail_bound={self.tail_bound:.3g}, cutoff={self.cutoff})"


def check_tolerance(value: TruncatedValue, tolerance: float | None) -> TruncatedValue:
    if tolerance is not None and value.tail_bound > tolerance:
        warnings.warn(
            f"tail bound {value.tail_bound:.3g} exceeds tolerance {tolerance:.3g} "
            f"at cutoff {value.cutoff}",
            TruncationWarning,
            stacklevel=3,
        )
    return value


def product_of_increments(y: np.ndarray) -> float:
    """prod(1 + y) in ascending order, via a correctly rounded sum of logs.

    Exact zero when some 1 + y vanishes; negative factors are tracked by sign.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.size == 0:
        return 1.0
    f = 1.0 + y
    if np.any(f == 0.0):
        return 0.0
    neg = f < 0
    logs = np.empty_like(y)
    logs[~neg] = np.log1p(y[~neg])
    logs[neg] = np.log(-f[neg])
    sign = -1.0 if np.count_nonzero(neg) % 2 else 1.0
    return sign * math.exp(math.fsum(logs))


def prime_sum_tail(s: float, P: float) -> tuple[float, float]:
    """Estimate and error bound for the sum of p**-s over primes p > P (s > 1).

    The estimate is the integral of t**-s / log t from P to infinity, i.e.
    E1((s - 1) log P). The bound follows from partial summation against
    |theta(t) - t| < t / (2 log t), valid for t >= 563 (Rosser-Schoenfeld);
    below that the estimate itself is returned as its own error.
    """
    if s <= 1:
        raise ValueError("prime tail sum needs s > 1")
    L = math.log(P)
    est = float(exp1((s - 1.0) * L))
    if P < 563:
        return est, est
    err = P ** (1.0 - s) / (2.0 * L * L) + (s + 1.0 / L) / (2.0 * L) * est
    return est, err
