"""Optional numba acceleration.

Hot kernels are written as plain numpy/Python loops and compiled with
``numba.njit`` when numba is importable and ``VFPOLY_DISABLE_NUMBA`` is unset
(or ``0``).  With the flag set, the very same functions run interpreted.
"""

import os

_flag = os.environ.get("VFPOLY_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    import numba as _numba
    USE_NUMBA = True
except ImportError:
    _numba = None
    USE_NUMBA = False


def jit(func):
    """Compile ``func`` in nopython mode, or return it unchanged."""
    if USE_NUMBA:
        return _numba.njit(cache=True, nogil=True)(func)
    return func


def backend():
    return "numba" if USE_NUMBA else "python"
