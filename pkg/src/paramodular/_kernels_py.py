"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""


def count_slab(nu1, nu2, nu3, p, bound, target, inv3, lo, hi):
    if bound < 0:
        return 0
    total = 0
    for y1 in range(lo, hi):
        s = nu1 * y1
        if s > bound:
            break
        while s <= bound:
            top = (bound - s) // nu3
            r3 = ((target - s) * inv3) % p
            if r3 <= top:
                total += (top - r3) // p + 1
            s += nu2
    return total


def min_age_sum(r, a1, a2, a3):
    best, best_k, quasi = -1, 0, 0
    for k in range(1, r):
        b = (k * a1 % r, k * a2 % r, k * a3 % r)
        nz = sum(1 for x in b if x)
        if nz == 0:
            continue
        if nz == 1:
            quasi += 1
        s = b[0] + b[1] + b[2]
        if best < 0 or s < best:
            best, best_k = s, k
    return best, best_k, quasi
