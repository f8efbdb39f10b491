"""Optional numba acceleration.

Set ``RANKMOD_DISABLE_JIT=1`` to force the pure numpy/Python kernels, e.g. for
debugging or on platforms without numba.
"""

import os

DISABLE_ENV = "RANKMOD_DISABLE_JIT"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


def jit_enabled():
    if numba is None:
        return False
    return os.environ.get(DISABLE_ENV, "").strip().lower() not in ("1", "true", "yes", "on")


def njit(*args, **kwargs):
    """``numba.njit(cache=True)`` when numba is importable, else identity."""
    kwargs.setdefault("cache", True)

    def wrap(fn):
        if numba is None:  # pragma: no cover
            return fn
        return numba.njit(**kwargs)(fn)

    if len(args) == 1 and callable(args[0]):
        return wrap(args[0])
    return wrap
