"""Kernel backend selection.

Uses the compiled ``_core_ext`` when it imports, else the pure-Python
``_core_py``.  Setting ``CHOWLAB_PURE_PYTHON=1`` forces the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("CHOWLAB_PURE_PYTHON", "") not in ("", "0"):
    from ._core_py import Echelon, inc_mul, poly_add_into, poly_mul, rank_of
else:
    try:
        from ._core_ext import Echelon, inc_mul, poly_add_into, poly_mul, rank_of
        BACKEND = "cython"
    except ImportError:
        from ._core_py import Echelon, inc_mul, poly_add_into, poly_mul, rank_of

__all__ = ["BACKEND", "Echelon", "inc_mul", "poly_add_into", "poly_mul", "rank_of"]
