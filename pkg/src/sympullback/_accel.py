"""Backend selection for the numeric kernels.

Numba is used when it can be imported, unless the environment variable
``SYMPULLBACK_NO_NUMBA`` is set to a true value ("1", "true", "yes"), in
which case the pure-numpy implementations run instead.
"""
from __future__ import annotations

import os

_FALSE = {"", "0", "false", "no"}


def numba_requested() -> bool:
    return os.environ.get("SYMPULLBACK_NO_NUMBA", "").strip().lower() in _FALSE


try:
    import numba  # noqa: F401
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def use_numba() -> bool:
    return HAVE_NUMBA and numba_requested()


def backend_name() -> str:
    return "numba" if use_numba() else "numpy"
