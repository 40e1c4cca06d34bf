"""Numba switch.

Kernels are compiled with ``numba.njit`` unless the environment variable
``LORENTZSOLITON_DISABLE_NUMBA`` is set to a truthy value or numba cannot be
imported, in which case the pure-numpy implementations are used instead.
"""

import os

_FLAG = "LORENTZSOLITON_DISABLE_NUMBA"


def _env_disabled():
    return os.environ.get(_FLAG, "").strip().lower() not in ("", "0", "false", "no")


try:
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

NUMBA_AVAILABLE = _numba is not None
USE_NUMBA = NUMBA_AVAILABLE and not _env_disabled()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator."""
    if NUMBA_AVAILABLE:
        return _numba.njit(*args, cache=True, **kwargs)
    if len(args) == 1 and callable(args[0]):
        return args[0]
    return lambda f: f


def backend_name():
    return "numba" if USE_NUMBA else "numpy"
