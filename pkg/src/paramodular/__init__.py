"""Exact verification of the numeric steps behind the general-type threshold
for moduli of (1, p)-polarised abelian surfaces."""

from .kernels import BACKEND
from .ledger import general_type_test, min_general_type_prime

__all__ = ["BACKEND", "general_type_test", "min_general_type_prime"]
__version__ = "0.1.0"
