"""K-type multiplicities in holomorphic discrete series of Sp(2n, R) through
Blattner's formula, with Kostant partition counts for the noncompact
positive roots ``e_i + e_j`` (``i <= j``)."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .archimedean.closed_form import InvalidWeight


def noncompact_roots(n: int) -> tuple[tuple[int, ...], ...]:
    roots = []
    for i in range(n):
        for j in range(i, n):
            v = [0] * n
            v[i] += 1
            v[j] += 1
            roots.append(tuple(v))
    return tuple(roots)


def q_partition_count(mu: Sequence[int]) -> int:
    """Number of ways to write ``mu`` as a sum of roots ``e_i + e_j`` (``i <= j``)
    with non-negative integer multiplicities."""
    mu = tuple(int(x) for x in mu)
    if any(x < 0 for x in mu) or sum(mu) % 2:
        return 0
    return _count(noncompact_roots(len(mu)), 0, mu)


@lru_cache(maxsize=None)
def _count(roots: tuple, idx: int, rest: tuple) -> int:
    if not any(rest):
        return 1
    if idx == len(roots):
        return 0
    r = roots[idx]
    total = 0
    cur = rest
    while all(x >= 0 for x in cur):
        total += _count(roots, idx + 1, cur)
        cur = tuple(a - b for a, b in zip(cur, r))
    return total


def _sign(p: Sequence[int]) -> int:
    p = list(p)
    s = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def validate_lambda(lam: Sequence[int]) -> tuple[int, ...]:
    """``l_1 > ... > l_n > 0`` with every ``l_j + j`` of the same parity."""
    lam = tuple(int(x) for x in lam)
    if not lam:
        raise InvalidWeight("empty parameter")
    if any(lam[i] <= lam[i + 1] for i in range(len(lam) - 1)) or lam[-1] <= 0:
        raise InvalidWeight(f"{lam} is not strictly decreasing and positive")
    if len({(l + j) % 2 for j, l in enumerate(lam, start=1)}) != 1:
        raise InvalidWeight(f"{lam}: l_j + j must all have one parity")
    return lam


def blattner_multiplicity(lam: Sequence[int], m: int = 0, check: bool = True) -> int:
    """Multiplicity of the K-type with highest weight ``(k_1 + m, k_2, ..., k_n)``
    (``k_j = l_j + j``) in the discrete series with parameter ``lam``:

    ``sum_sigma sgn(sigma) Q(sum_j (l_1 + 1 + m - l_j) e_j - sigma(sum_j j e_j))``.
    """
    lam = validate_lambda(lam) if check else tuple(lam)
    if m < 0:
        raise ValueError("m must be non-negative")
    n = len(lam)
    base = [lam[0] + 1 + m - l for l in lam]
    total = 0
    for perm in permutations(range(n)):
        shift = [0] * n
        for j, pj in enumerate(perm, start=1):
            shift[pj] = j
        total += _sign(perm) * q_partition_count([b - s for b, s in zip(base, shift)])
    return total


def minimal_ktype(lam: Sequence[int]) -> tuple[int, ...]:
    """``k_j = l_j + j``."""
    lam = validate_lambda(lam)
    k = tuple(l + j for j, l in enumerate(lam, start=1))
    if k[-1] <= len(k):
        raise InvalidWeight("minimal K-type violates k_n > n")
    return k


def admissible_lambdas(n: int, l1_max: int):
    """All admissible parameters with ``l_1 <= l1_max``, in lexicographic order."""
    def rec(prefix, upper):
        if len(prefix) == n:
            lam = tuple(prefix)
            try:
                validate_lambda(lam)
            except InvalidWeight:
                return
            yield lam
            return
        remaining = n - len(prefix)
        for l in range(remaining, upper + 1):
            yield from rec(prefix + [l], l - 1)
    yield from rec([], l1_max)
