"""Select the compiled arithmetic kernels when available.

Set ``SKEIN_PURE_PYTHON=1`` to force the pure-Python implementation.
"""

import os

BACKEND = "python"

if os.environ.get("SKEIN_PURE_PYTHON", "") not in ("", "0"):
    from skein._pykernels import poly_add, poly_div_alpha, poly_mul
else:
    try:
        from skein._ckernels import poly_add, poly_div_alpha, poly_mul

        BACKEND = "cython"
    except ImportError:  # extension not built
        from skein._pykernels import poly_add, poly_div_alpha, poly_mul

__all__ = ["BACKEND", "poly_add", "poly_mul", "poly_div_alpha"]
