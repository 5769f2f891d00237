"""Hot loops for the numeric archimedean checks.

Every kernel has a numba and a numpy implementation with identical
semantics; :func:`get` picks one according to :mod:`sympullback._accel`.
"""
from __future__ import annotations

import math

import numpy as np

from .._accel import HAVE_NUMBA, use_numba


def zeta_weights_numpy(a: np.ndarray, rate: float, expo: float, nk: int) -> np.ndarray:
    """Importance weights for the zeta integral over the positive orthant.

    ``a`` has shape ``(N, n)`` and holds independent Exp(rate) samples.
    The integrand is ``|prod sinh(roots)| * 2^(nk) * prod (2 cosh a_j)^(-expo)``
    where the roots are ``a_i -/+ a_j`` (i<j) and ``2 a_j``.
    """
    N, n = a.shape
    logw = np.zeros(N)
    for i in range(n):
        logw += np.log(np.sinh(2.0 * a[:, i]))
        logw -= expo * (a[:, i] + np.log1p(np.exp(-2.0 * a[:, i])))
        logw -= math.log(rate) - rate * a[:, i]
        for j in range(i + 1, n):
            logw += np.log(np.abs(np.sinh(a[:, i] - a[:, j])))
            logw += np.log(np.sinh(a[:, i] + a[:, j]))
    return np.exp(logw + nk * math.log(2.0))


def _zeta_weights_numba_impl(a, rate, expo, nk):
    N, n = a.shape
    out = np.empty(N)
    lr = math.log(rate)
    l2 = nk * math.log(2.0)
    for s in range(N):
        lw = l2
        for i in range(n):
            x = a[s, i]
            lw += math.log(math.sinh(2.0 * x))
            lw -= expo * (x + math.log1p(math.exp(-2.0 * x)))
            lw -= lr - rate * x
            for j in range(i + 1, n):
                y = a[s, j]
                lw += math.log(abs(math.sinh(x - y))) + math.log(math.sinh(x + y))
        out[s] = math.exp(lw)
    return out


def selberg2_grid_numpy(v: np.ndarray, w: np.ndarray, z: float) -> np.ndarray:
    """Integrand of the two-variable Selberg-type integral in coordinates
    ``t2 = e^v``, ``t1 = t2 e^w`` (Jacobian included), on a tensor grid."""
    V = v[:, None]
    W = w[None, :]
    return np.exp(-2.0 * z * V) * (np.exp((1.0 - z) * W) - np.exp(-(z + 1.0) * W))


def _selberg2_grid_numba_impl(v, w, z):
    fw = np.empty(w.shape[0])
    for j in range(w.shape[0]):
        fw[j] = math.exp((1.0 - z) * w[j]) - math.exp(-(z + 1.0) * w[j])
    out = np.empty((v.shape[0], w.shape[0]))
    for i in range(v.shape[0]):
        ev = math.exp(-2.0 * z * v[i])
        for j in range(w.shape[0]):
            out[i, j] = ev * fw[j]
    return out


if HAVE_NUMBA:
    import numba

    zeta_weights_numba = numba.njit(cache=True)(_zeta_weights_numba_impl)
    selberg2_grid_numba = numba.njit(cache=True)(_selberg2_grid_numba_impl)
else:  # pragma: no cover
    zeta_weights_numba = zeta_weights_numpy
    selberg2_grid_numba = selberg2_grid_numpy


def get(name: str, backend: str | None = None):
    """Return the kernel ``name`` for ``backend`` ("numba", "numpy" or auto)."""
    if backend is None:
        backend = "numba" if use_numba() else "numpy"
    table = {
        ("zeta_weights", "numba"): zeta_weights_numba,
        ("zeta_weights", "numpy"): zeta_weights_numpy,
        ("selberg2_grid", "numba"): selberg2_grid_numba,
        ("selberg2_grid", "numpy"): selberg2_grid_numpy,
    }
    try:
        return table[(name, backend)]
    except KeyError:
        raise ValueError(f"no kernel {name!r} for backend {backend!r}") from None
