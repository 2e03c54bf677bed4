# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; semantics identical to _kernels_py."""


cdef inline long long _mod(long long a, long long m) nogil:
    cdef long long r = a % m
    if r < 0:
        r += m
    return r


cdef long long _count_slab(long long nu1, long long nu2, long long nu3, long long p,
                           long long bound, long long target, long long inv3,
                           long long lo, long long hi) nogil:
    cdef long long total = 0
    cdef long long y1, y2, s1, s, rem, top, r3
    for y1 in range(lo, hi):
        s1 = nu1 * y1
        if s1 > bound:
            break
        y2 = 0
        s = s1
        while s <= bound:
            rem = bound - s
            top = rem // nu3
            r3 = _mod((target - s) * inv3, p)
            if r3 <= top:
                total += (top - r3) // p + 1
            y2 += 1
            s += nu2
    return total


def count_slab(long long nu1, long long nu2, long long nu3, long long p,
               long long bound, long long target, long long inv3,
               long long lo, long long hi):
    """Count ``y >= 0`` with ``nu.y <= bound``, ``nu.y = target (mod p)`` and ``lo <= y1 < hi``."""
    cdef long long out
    if bound < 0:
        return 0
    with nogil:
        out = _count_slab(nu1, nu2, nu3, p, bound, target, inv3, lo, hi)
    return out


def min_age_sum(long long r, long long a1, long long a2, long long a3):
    """Return ``(min_sum, argmin_k, n_quasi_reflections)`` over nontrivial k in [1, r).

    ``min_sum`` is ``min_k sum_i (k a_i mod r)``, i.e. ``r`` times the least age;
    it is -1 when every k acts trivially.
    """
    cdef long long k, b1, b2, b3, s, nz
    cdef long long best = -1, best_k = 0, quasi = 0
    with nogil:
        for k in range(1, r):
            b1 = _mod(k * a1, r)
            b2 = _mod(k * a2, r)
            b3 = _mod(k * a3, r)
            nz = (b1 != 0) + (b2 != 0) + (b3 != 0)
            if nz == 0:
                continue
            if nz == 1:
                quasi += 1
            s = b1 + b2 + b3
            if best < 0 or s < best:
                best = s
                best_k = k
    return best, best_k, quasi
