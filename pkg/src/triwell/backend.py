"""Kernel backend selection.

The compiled Cython kernels are preferred when importable; the NumPy
implementations are the fallback. Set TRIWELL_NO_EXT=1 to force the
NumPy backend (useful for benchmarking and debugging).
"""

import os

from . import _kernels_py

if os.environ.get("TRIWELL_NO_EXT"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py


def backend_name() -> str:
    """Name of the active kernel backend: 'cython' or 'numpy'."""
    return kernels.BACKEND
