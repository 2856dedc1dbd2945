"""Selects the polynomial kernel at import time.

The compiled extension is preferred; the pure-Python kernel is the
fallback, and can be forced with KRTORUS_PURE=1 (useful for debugging
and for the backend benchmark).
"""

import os

from . import _kernel_py

if os.environ.get("KRTORUS_PURE"):
    kernel = _kernel_py
    COMPILED = False
else:
    try:
        from . import _speedups as kernel  # type: ignore[no-redef]

        COMPILED = True
    except ImportError:
        kernel = _kernel_py
        COMPILED = False

BACKEND_NAME = "compiled" if COMPILED else "pure-python"


def available_backends():
    """Name -> kernel module, for benchmarks and cross-checks."""
    out = {"pure-python": _kernel_py}
    try:
        from . import _speedups

        out["compiled"] = _speedups
    except ImportError:
        pass
    return out
