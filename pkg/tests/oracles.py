"""Brute-force reference computations used by the tests.

Nothing here calls into the package; each routine recomputes a quantity from
its definition so the library can be checked against it.
"""
from __future__ import annotations

import itertools
import math

import numpy as np


def sp_order_brute(n: int, p: int, m: int) -> int:
    """Count ``g`` mod ``p^m`` with ``g^T J g = J`` by enumerating all matrices."""
    N = p ** m
    d = 2 * n
    J = np.zeros((d, d), dtype=np.int64)
    J[:n, n:] = np.eye(n, dtype=np.int64)
    J[n:, :n] = -np.eye(n, dtype=np.int64)
    target = J % N
    count = 0
    for batch in _chunks(itertools.product(range(N), repeat=d * d), 1 << 15):
        g = np.array(batch, dtype=np.int64).reshape(-1, d, d)
        lhs = np.einsum("bji,jk,bkl->bil", g, J, g) % N
        count += int(np.all(lhs == target, axis=(1, 2)).sum())
    return count


def _chunks(it, size):
    buf = []
    for x in it:
        buf.append(x)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def cyclic_sublattice_count(p: int, e: int) -> int:
    """Number of sublattices ``L`` of ``Z^2`` with ``Z^2/L`` cyclic of order ``p^(2e)``.

    Every such ``L`` has a unique Hermite normal form ``[[a, b], [0, d]]`` with
    ``a d = p^(2e)`` and ``0 <= b < d``; the quotient is cyclic iff
    ``gcd(a, b, d) = 1``.  Whether that holds depends on ``b`` only modulo
    ``g = gcd(a, d)``, so the count over ``b`` is done on one period.
    """
    total = 0
    size = p ** (2 * e)
    for i in range(2 * e + 1):
        a, d = p ** i, size // p ** i
        g = math.gcd(a, d)
        good = sum(1 for b in range(g) if math.gcd(g, b) == 1) if g > 1 else 1
        total += (d // g) * good
    return total


def selfdual_lattice_count_sp4(p: int) -> int:
    """Number of ``J``-self-dual lattices ``L`` in ``Q_p^4`` whose elementary
    divisors relative to ``Z_p^4`` are ``(p^-1, 1, 1, p)``.

    Works with ``M = p L``, which lies between ``p^2 Z^4`` and ``Z^4``:
    enumerate its column Hermite normal forms (upper triangular, diagonal
    entries dividing ``p^2``, determinant ``p^4``, entries right of a pivot
    reduced modulo that pivot), keep those containing
    ``p^2 Z^4`` whose basis is isotropic modulo ``p^2``, and read the type
    off the Smith form of the basis.
    """
    q = p * p
    J = np.array([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]], dtype=np.int64)
    diags = [t for t in itertools.product((1, p, q), repeat=4) if math.prod(t) == p ** 4]
    count = 0
    for dg in diags:
        free = [(i, j) for j in range(4) for i in range(j)]
        for offs in itertools.product(*[range(dg[i]) for (i, _) in free]):
            B = np.diag(dg).astype(np.int64)
            for (i, j), v in zip(free, offs):
                B[i, j] = v
            if not _contains_scaled_identity(B, q):
                continue
            if np.any((B.T @ J @ B) % q):
                continue
            if _smith_diagonal(B) == [1, p, p, q]:
                count += 1
    return count


def _contains_scaled_identity(B: np.ndarray, q: int) -> bool:
    # the column lattice of B contains q Z^4 iff q B^-1 is integral
    adj = np.round(np.linalg.inv(B) * round(np.linalg.det(B))).astype(np.int64)
    det = int(round(np.linalg.det(B)))
    return not np.any((q * adj) % det)


def _smith_diagonal(B: np.ndarray) -> list[int]:
    """Invariant factors from determinantal divisors ``d_k = gcd of k x k minors``."""
    n = B.shape[0]
    dets = [1]
    for k in range(1, n + 1):
        g = 0
        for rows in itertools.combinations(range(n), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, int(round(np.linalg.det(B[np.ix_(rows, cols)]))))
        dets.append(g)
    return [dets[k] // dets[k - 1] for k in range(1, n + 1)]


def siegel_fundamental_domain_area() -> float:
    """``int_{|x| <= 1/2} int_{y >= sqrt(1 - x^2)} y^-2 dy dx`` by scipy."""
    from scipy import integrate

    val, _ = integrate.dblquad(lambda y, x: y ** -2, -0.5, 0.5,
                               lambda x: math.sqrt(1 - x * x), lambda x: np.inf)
    return val


def gamma_factor_poles(kind: str, shift: int, window: int) -> set[int]:
    """Integer poles of ``Gamma_R(s + shift)`` (kind "R") or ``Gamma_C(s + shift)``."""
    step = 2 if kind == "R" else 1
    return {r for r in range(-window, window + 1)
            if r + shift <= 0 and (r + shift) % step == 0}


def critical_points_by_scan(factors: list[tuple[str, int]], window: int) -> list[int]:
    """Integers where neither the product nor its ``s -> 1 - s`` reflection has a pole."""
    poles = set()
    for kind, shift in factors:
        poles |= gamma_factor_poles(kind, shift, window + 2)
    return [r for r in range(-window, window + 1) if r not in poles and (1 - r) not in poles]


def root_partition_count_brute(mu) -> int:
    """Number of symmetric non-negative integer matrices ``A`` with
    ``sum_j A_ij + A_ii = mu_i``, i.e. ways to write ``mu`` as a sum of
    ``e_i + e_j`` (``i <= j``)."""
    n = len(mu)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    bounds = [min(mu[i], mu[j]) // (2 if i == j else 1) for i, j in pairs]
    count = 0
    for mult in itertools.product(*[range(b + 1) for b in bounds]):
        v = [0] * n
        for (i, j), c in zip(pairs, mult):
            v[i] += c
            v[j] += c
        count += v == list(mu)
    return count


def holomorphic_ktype_multiplicity(m: int) -> int:
    """Multiplicity of ``(k_1 + m, k_2, ..., k_n)`` in ``tau_k`` tensored with
    the symmetric algebra of ``Sym^2 C^n``.

    The symmetric algebra is the multiplicity-free sum of the types
    ``(2a_1, ..., 2a_n)``; by the Pieri rule only ``(m, 0, ..., 0)`` can add
    ``m`` boxes to the first row alone, so the answer is 1 for even ``m``
    and 0 otherwise.
    """
    return 1 if m % 2 == 0 else 0
