"""Ramanujan sums, the kernel f(n, s), its spectrum and prime-pair counting."""
from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
