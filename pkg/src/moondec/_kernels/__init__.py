"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``MOONDEC_PURE_PYTHON=1`` to force the fallback (used by the benchmark
and by tests that compare the two backends).
"""

import os

if os.environ.get("MOONDEC_PURE_PYTHON"):
    from moondec._kernels._pykernels import poly_mul, row_echelon
    BACKEND = "python"
else:
    try:
        from moondec._kernels._ckernels import poly_mul, row_echelon
        BACKEND = "cython"
    except ImportError:
        from moondec._kernels._pykernels import poly_mul, row_echelon
        BACKEND = "python"

__all__ = ["poly_mul", "row_echelon", "BACKEND"]
