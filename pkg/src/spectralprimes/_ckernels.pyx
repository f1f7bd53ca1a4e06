# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``_pykernels`` one-for-one."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, uint8_t

cnp.import_array()

cdef extern from *:
    """
    static inline unsigned long long sp_mulmod(unsigned long long a,
                                               unsigned long long b,
                                               unsigned long long m) {
        return (unsigned long long)(((unsigned __int128)a * b) % m);
    }
    """
    uint64_t sp_mulmod(uint64_t a, uint64_t b, uint64_t m) nogil

MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

cdef uint64_t[12] _BASES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
cdef uint64_t[15] _SMALL = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


cdef inline uint64_t _powmod(uint64_t a, uint64_t e, uint64_t m) nogil:
    cdef uint64_t r = 1
    a %= m
    while e:
        if e & 1:
            r = sp_mulmod(r, a, m)
        a = sp_mulmod(a, a, m)
        e >>= 1
    return r


cdef bint _is_prime(uint64_t n) nogil:
    cdef int i, j, r
    cdef uint64_t d, x
    if n < 2:
        return False
    for i in range(15):
        if n % _SMALL[i] == 0:
            return n == _SMALL[i]
    if n < 2209:
        return True
    d = n - 1
    r = 0
    while (d & 1) == 0:
        d >>= 1
        r += 1
    for i in range(12):
        x = _powmod(_BASES[i], d, n)
        if x == 1 or x == n - 1:
            continue
        for j in range(r - 1):
            x = sp_mulmod(x, x, n)
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_u64(n):
    n = int(n)
    if n < 2:
        return False
    if n >= 2 ** 64:
        raise OverflowError("n must be below 2**64")
    return bool(_is_prime(<uint64_t>n))


def sieve_odd_segment(lo, hi, base_primes):
    cdef int64_t clo = lo, chi = hi
    cdef int64_t size = max(0, (chi - clo + 1) // 2)
    cdef cnp.ndarray[uint8_t, ndim=1] flags = np.ones(size, dtype=np.uint8)
    cdef cnp.ndarray[int64_t, ndim=1] bp = np.ascontiguousarray(base_primes, dtype=np.int64)
    cdef uint8_t* f = <uint8_t*> flags.data
    cdef int64_t k, p, start, idx, nb = bp.shape[0]
    with nogil:
        for k in range(nb):
            p = bp[k]
            if p == 2:
                continue
            if p * p >= chi:
                break
            start = ((clo + p - 1) // p) * p
            if start < p * p:
                start = p * p
            if (start & 1) == 0:
                start += p
            idx = (start - clo) >> 1
            while idx < size:
                f[idx] = 0
                idx += p
    return flags


def poly_twin_hits(d, c1, c2, n_max, sieve_limit=2000):
    cdef int cd = d
    cdef int64_t cc1 = c1, cc2 = c2, nm = n_max, n
    cdef uint64_t v
    cdef int i
    out = []
    if nm < 1:
        return np.zeros(0, dtype=np.int64)
    if float(n_max) ** d + max(c1, c2) >= 2.0 ** 63:
        raise OverflowError("polynomial values exceed the 64-bit range")
    for n in range(1, nm + 1):
        v = 1
        for i in range(cd):
            v *= <uint64_t>n
        if _is_prime(v + <uint64_t>cc1) and _is_prime(v + <uint64_t>cc2):
            out.append(n)
    return np.asarray(out, dtype=np.int64)
