"""Pick the kernel implementation at import time.

The compiled ``_ckernels`` extension is preferred. Setting the environment
variable ``UNCQ_PURE_PYTHON=1`` forces the pure-Python fallback.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("UNCQ_PURE_PYTHON", "") not in ("", "0"):
    kernels = _pykernels
    NAME = "python"
else:
    try:
        from . import _ckernels as kernels
        NAME = "cython"
    except ImportError:
        kernels = _pykernels
        NAME = "python"

jacobi_eigh = kernels.jacobi_eigh
scan_grid = kernels.scan_grid
refine = kernels.refine
