"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from spectralprimes import _pykernels
from spectralprimes.sieve import base_primes_for

try:
    from spectralprimes import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def cases():
    hi = 10**8 + 1
    lo = hi - 2 * 10**6
    base = base_primes_for(hi)
    mr_inputs = [int(v) for v in np.random.default_rng(0).integers(2**40, 2**62, 20000)]
    return {
        "sieve_odd_segment (2e6 odd numbers near 1e8)": lambda k: int(k.sieve_odd_segment(lo, hi, base).sum()),
        "is_prime_u64 (20000 random 62-bit)": lambda k: sum(k.is_prime_u64(n) for n in mr_inputs),
        "poly_twin_hits n^2+1, n^2+3 (x = 1e11)": lambda k: k.poly_twin_hits(2, 1, 3, 316227).size,
        "poly_twin_hits n^4+1, n^4+3 (x = 1e16)": lambda k: k.poly_twin_hits(4, 1, 3, 10**4).size,
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the fallback only")
    print(f"{'kernel':48s}" + "".join(f"{name:>12s}" for name, _ in backends) + "     speedup")
    for label, fn in cases().items():
        times, results = [], []
        for _, mod in backends:
            t, r = best_of(lambda: fn(mod), args.repeat)
            times.append(t)
            results.append(r)
        if len(set(results)) != 1:
            raise SystemExit(f"backends disagree on {label}: {results}")
        speed = f"{times[-1] / times[0]:10.1f}x" if len(times) > 1 else ""
        print(f"{label:48s}" + "".join(f"{t * 1e3:10.1f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
