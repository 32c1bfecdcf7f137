"""Kernel backend selection.

The compiled Cython extension is preferred when importable; the pure-Python
twin is the fallback. Set BESSLAB_FORCE_PYTHON=1 to force the fallback (used
by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("BESSLAB_FORCE_PYTHON", "") == "1":
    from besslab import _kernels_py as kernels
else:
    try:
        from besslab import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from besslab import _kernels_py as kernels

BACKEND: str = kernels.BACKEND

sparse_violation = kernels.sparse_violation
turan_max = kernels.turan_max
rainbow_cycle = kernels.rainbow_cycle
grid_search = kernels.grid_search
