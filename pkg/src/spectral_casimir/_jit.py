"""Numba switch.

Set ``SPECTRAL_CASIMIR_DISABLE_JIT=1`` to route every hot kernel through its
pure-numpy implementation. The numba versions are still importable (and are
compiled lazily on first call) so benchmarks can compare both paths in one
process.
"""
import os

DISABLE_ENV = "SPECTRAL_CASIMIR_DISABLE_JIT"

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None


def jit_disabled_by_env():
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


USE_NUMBA = HAVE_NUMBA and not jit_disabled_by_env()


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if numba is None:
        return func
    return numba.njit(cache=True)(func)
