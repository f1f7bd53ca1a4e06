"""Kernel backend selection.

The compiled extension is used when importable; setting
``SPECTRALPRIMES_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

from . import _pykernels

if os.environ.get("SPECTRALPRIMES_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
else:
    try:
        from . import _ckernels as kernels
    except ImportError:  # extension not built
        kernels = _pykernels

BACKEND = "cython" if kernels is not _pykernels else "python"
