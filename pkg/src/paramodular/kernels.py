"""Select the compiled kernels when available, else the pure-Python ones.

Set ``PARAMODULAR_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("PARAMODULAR_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        pass
    else:
        _impl = _compiled
        BACKEND = "cython"

# Compiled loops use 64-bit integers.
INT64_SAFE = 2 ** 62


def count_slab(nu1, nu2, nu3, p, bound, target, inv3, lo, hi, backend=None):
    impl = _pick(backend)
    if impl is not _kernels_py and max(bound, p, nu1, nu2, nu3) * max(p, 1) >= INT64_SAFE:
        impl = _kernels_py
    return impl.count_slab(nu1, nu2, nu3, p, bound, target, inv3, lo, hi)


def min_age_sum(r, a1, a2, a3, backend=None):
    impl = _pick(backend)
    if impl is not _kernels_py and r * r >= INT64_SAFE:
        impl = _kernels_py
    return impl.min_age_sum(r, a1, a2, a3)


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        if _impl is _kernels_py:
            from . import _kernels
            return _kernels
        return _impl
    raise ValueError(f"unknown backend {backend!r}")
