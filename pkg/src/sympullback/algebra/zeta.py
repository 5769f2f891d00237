"""Bernoulli numbers and zeta values at positive even integers."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .scaled import ScaledConstant


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` with the convention ``B_1 = -1/2``."""
    if m < 0:
        raise ValueError("index must be non-negative")
    b = [Fraction(1)]
    for k in range(1, m + 1):
        b.append(-sum(math.comb(k + 1, j) * b[j] for j in range(k)) / (k + 1))
    return b[m]


def zeta_even(k: int) -> ScaledConstant:
    """``zeta(2k)`` as ``rational * pi^(2k)``."""
    if k < 1:
        raise ValueError("zeta_even needs k >= 1")
    r = (-1) ** (k + 1) * bernoulli(2 * k) * Fraction(2) ** (2 * k) / (2 * math.factorial(2 * k))
    return ScaledConstant(r, pi_exp=2 * k)
