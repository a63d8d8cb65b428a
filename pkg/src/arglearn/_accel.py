"""Backend switch for the numeric kernels.

Set ``ARGLEARN_BACKEND=numpy`` to bypass numba and run the vectorised
fallbacks. Anything else (or unset) uses numba when it is importable.
"""
import os

BACKEND_ENV = "ARGLEARN_BACKEND"

_requested = os.environ.get(BACKEND_ENV, "numba").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def njit(fn):
    """Compile ``fn`` with numba when enabled; return it untouched otherwise."""
    if not HAVE_NUMBA:
        return fn
    return _njit(cache=True, nogil=True)(fn)
