"""Exact similitude-symplectic matrices, the doubling embedding, coset
representatives and congruence-subgroup volumes.

Matrices are numpy object arrays of ``Fraction``.  The symplectic form is
``J_n = [[0, I_n], [-I_n, 0]]`` and ``g`` has multiplier ``mu`` when
``g.T @ J @ g == mu * J``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import ScaledConstant, zeta_even


class NotSimilitude(ValueError):
    """The matrix does not preserve the symplectic form up to a scalar."""


class NotParabolic(ValueError):
    """The matrix is not in the Siegel parabolic (lower-left block non-zero)."""


# --- exact matrix helpers -------------------------------------------------

def exact(m) -> np.ndarray:
    """Copy ``m`` into an object array of Fractions."""
    a = np.asarray(m, dtype=object)
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        if isinstance(v, Fraction):
            out[idx] = v
        elif isinstance(v, (int, np.integer)):
            out[idx] = Fraction(int(v))
        elif isinstance(v, str):
            out[idx] = Fraction(v)
        else:
            raise TypeError(f"entry {v!r} is not exact; use Fraction or int")
    return out


def eye(n: int) -> np.ndarray:
    return exact(np.eye(n, dtype=int)) if n else np.empty((0, 0), dtype=object)


def zeros(r: int, c: int) -> np.ndarray:
    return exact(np.zeros((r, c), dtype=int))


def J(n: int) -> np.ndarray:
    """The standard ``2n x 2n`` symplectic form."""
    return np.block([[zeros(n, n), eye(n)], [-eye(n), zeros(n, n)]]) if n else zeros(0, 0)


def det(m: np.ndarray) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    a = [list(row) for row in exact(m)]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d *= a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] * inv
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return d


def inv(m: np.ndarray) -> np.ndarray:
    """Exact inverse by Gauss-Jordan elimination."""
    a = [list(row) for row in exact(m)]
    n = len(a)
    b = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        b[c], b[piv] = b[piv], b[c]
        f = 1 / a[c][c]
        a[c] = [x * f for x in a[c]]
        b[c] = [x * f for x in b[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                g = a[r][c]
                a[r] = [x - g * y for x, y in zip(a[r], a[c])]
                b[r] = [x - g * y for x, y in zip(b[r], b[c])]
    return exact(b)


def blocks(g: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split a ``2n x 2n`` matrix into its ``n x n`` blocks ``A, B, C, D``."""
    n = g.shape[0] // 2
    return g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:]


# --- similitudes ------------------------------------------------------------

def multiplier(g, n: int | None = None) -> Fraction:
    """The multiplier ``mu`` with ``g^T J g = mu J``; raises ``NotSimilitude``."""
    g = exact(g)
    size = g.shape[0]
    if g.shape != (size, size) or size % 2:
        raise NotSimilitude(f"shape {g.shape} is not 2n x 2n")
    if n is not None and size != 2 * n:
        raise NotSimilitude(f"expected size {2 * n}, got {size}")
    if size == 0:
        return Fraction(1)
    jn = J(size // 2)
    m = g.T.dot(jn).dot(g)
    mu = m[0, size // 2]
    if mu == 0 or not np.all(m == mu * jn):
        raise NotSimilitude("matrix does not preserve the symplectic form up to scalar")
    return mu


@dataclass(frozen=True)
class GSpMatrix:
    """A validated exact element of GSp(2n, Q)."""

    entries: tuple

    def __post_init__(self):
        a = exact(self.entries)
        mu = multiplier(a)
        object.__setattr__(self, "entries", tuple(tuple(r) for r in a))
        object.__setattr__(self, "_mu", mu)

    @classmethod
    def of(cls, m) -> "GSpMatrix":
        return cls(tuple(tuple(r) for r in exact(m)))

    @property
    def array(self) -> np.ndarray:
        return exact(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries) // 2

    @property
    def mu(self) -> Fraction:
        return self._mu

    def __matmul__(self, o: "GSpMatrix") -> "GSpMatrix":
        return GSpMatrix.of(self.array.dot(o.array))

    def inverse(self) -> "GSpMatrix":
        return GSpMatrix.of(inv(self.array))


def _arr(g) -> np.ndarray:
    return g.array if isinstance(g, GSpMatrix) else exact(g)


def embed_pair(g1, g2) -> np.ndarray:
    """Doubling embedding of ``GSp(2a) x GSp(2b)`` (equal multipliers) into
    ``GSp(2a+2b)``.

    ``(A1 B1 C1 D1), (A2 B2 C2 D2)`` go to the matrix with block rows
    ``[A1 0 -B1 0], [0 A2 0 B2], [-C1 0 D1 0], [0 C2 0 D2]``; the sign twist
    on the first factor keeps the multiplier equal to the common one.
    """
    g1, g2 = _arr(g1), _arr(g2)
    mu1, mu2 = multiplier(g1), multiplier(g2)
    if g1.size and g2.size and mu1 != mu2:
        raise NotSimilitude(f"multipliers differ: {mu1} != {mu2}")
    a, b = g1.shape[0] // 2, g2.shape[0] // 2
    A1, B1, C1, D1 = blocks(g1) if a else (zeros(0, 0),) * 4
    A2, B2, C2, D2 = blocks(g2) if b else (zeros(0, 0),) * 4
    z = zeros
    return np.block([
        [A1, z(a, b), -B1, z(a, b)],
        [z(b, a), A2, z(b, a), B2],
        [-C1, z(a, b), D1, z(a, b)],
        [z(b, a), C2, z(b, a), D2],
    ])


def _itilde(n: int, r: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n - r, n):
        m[i, i] = Fraction(1)
    return m


def alpha_r(n: int, r: int) -> np.ndarray:
    """Unipotent representative ``[[I,0],[C,I]]`` with ``C = [[0,It],[It,0]]``."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    I, O, It = eye(n), zeros(n, n), _itilde(n, r)
    return np.block([[I, O, O, O], [O, I, O, O], [O, It, I, O], [It, O, O, I]])


def coset_representative(n: int, r: int) -> np.ndarray:
    """Double-coset representative ``Q_r`` in ``Sp(4n)``; ``Q_0`` is the identity."""
    if n < 1 or not 0 <= r <= n:
        raise ValueError(f"need n >= 1 and 0 <= r <= n, got n={n}, r={r}")
    I, O, It = eye(n), zeros(n, n), _itilde(n, r)
    Ip = I - It
    return np.block([[I, O, O, O], [O, Ip, O, It], [O, O, I, It], [It, -It, O, Ip]])


# --- Siegel parabolic data ---------------------------------------------------

@dataclass(frozen=True)
class ParabolicData:
    d: Fraction
    delta: Fraction
    multiplier: Fraction


def d_and_delta(p, convention: str = "P4n") -> ParabolicData:
    """Character data of a Siegel-parabolic element ``[[A, *], [0, v A^-T]]``.

    ``"P4n"``: ``p`` has size ``4n``; ``d = v^-n det A`` and ``delta = |d|^(2n+1)``.
    ``"P2n"``: ``p`` has size ``2n``; ``d = v^(-n(n+1)/2) det(A)^(n+1)`` and
    ``delta = |d|`` (the modulus character).
    """
    p = _arr(p)
    v = multiplier(p)
    A, _, C, _ = blocks(p)
    if np.any(C != 0):
        raise NotParabolic("lower-left block is non-zero")
    detA = det(A)
    N = p.shape[0] // 2
    if convention == "P4n":
        if N % 2:
            raise ValueError("P4n convention needs size divisible by 4")
        n = N // 2
        d = detA / v ** n
        return ParabolicData(d, abs(d) ** (2 * n + 1), v)
    if convention == "P2n":
        n = N
        val = detA ** (n + 1) / v ** (n * (n + 1) // 2)
        return ParabolicData(val, abs(val), v)
    raise ValueError(f"unknown convention {convention!r}")


def conjugate_by_coset(n: int, r: int, g) -> np.ndarray:
    """``Q_r g Q_r^-1``."""
    q = coset_representative(n, r)
    return q.dot(_arr(g)).dot(inv(q))


def levi_unipotent_element(n: int, r: int, g, U_block=None, S_block=None) -> np.ndarray:
    """``diag(g, I_r, g^-T, I_r)`` times an element of the unipotent radical of
    the parabolic fixing the first ``n - r`` basis vectors.

    ``U_block`` is an ``(n-r) x r`` matrix and ``S_block`` a symmetric
    ``n x n`` matrix with vanishing lower-right ``r x r`` block.
    """
    k = n - r
    g = exact(g).reshape(k, k)
    U = eye(n)
    if U_block is not None:
        U[:k, k:] = exact(U_block)
    S = zeros(n, n) if S_block is None else exact(S_block)
    if np.any(S != S.T) or np.any(S[k:, k:] != 0):
        raise ValueError("S_block must be symmetric with zero lower-right block")
    unip = np.block([[U, S.dot(inv(U.T))], [zeros(n, n), inv(U.T)]])
    m = eye(n)
    m[:k, :k] = g
    levi = np.block([[m, zeros(n, n)], [zeros(n, n), inv(m.T)]])
    return levi.dot(unip)


def check_levi_conjugation(case: str, n: int, r: int | None = None, **data) -> tuple[bool, Fraction]:
    """Verify that ``X = Q_r (p1, p2) Q_r^-1`` lies in the Siegel parabolic of
    ``GSp(4n)`` and return ``d(X)``.

    ``case="i"``: ``r < n``; keyword data ``p1``, ``p2`` are elements built by
    :func:`levi_unipotent_element`.  ``d(X) = det g1 * det g2``.
    ``case="ii"``: ``x1`` in ``Sp(2r)``; both factors are ``(1, x1)``. ``d = 1``.
    ``case="iii"``: ``g`` in ``Sp(2n)``; both factors equal ``g`` and ``r = n``.
    """
    if case == "i":
        if r is None or not 0 <= r < n:
            raise ValueError("case i needs 0 <= r < n")
        pair = embed_pair(data["p1"], data["p2"])
    elif case == "ii":
        if r is None or not 0 < r <= n:
            raise ValueError("case ii needs 0 < r <= n")
        x = embed_pair(eye(2 * (n - r)), data["x1"])
        pair = embed_pair(x, x)
    elif case == "iii":
        r = n
        g = _arr(data["g"])
        pair = embed_pair(g, g)
    else:
        raise ValueError(f"unknown case {case!r}")
    X = conjugate_by_coset(n, r, pair)
    try:
        pd = d_and_delta(X, "P4n")
    except NotParabolic:
        return False, Fraction(0)
    return True, pd.d


# --- random exact elements -----------------------------------------------------

def _rand_frac(rng: random.Random, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_symmetric(n: int, rng: random.Random, height: int = 3, integral: bool = False):
    s = zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            v = Fraction(rng.randint(-height, height)) if integral else _rand_frac(rng, height)
            s[i, j] = s[j, i] = v
    return s


def random_gl(n: int, rng: random.Random, height: int = 3) -> np.ndarray:
    while True:
        m = exact([[_rand_frac(rng, height) for _ in range(n)] for _ in range(n)])
        if n == 0 or det(m) != 0:
            return m


def random_sp(n: int, rng: random.Random, height: int = 3, words: int = 4,
              integral: bool = False) -> np.ndarray:
    """Random element of ``Sp(2n, Q)`` (or ``Sp(2n, Z)``) as a word in
    unipotent generators and, unless integral, Levi elements."""
    g = eye(2 * n)
    for _ in range(words):
        s = random_symmetric(n, rng, height, integral=integral)
        kind = rng.randrange(3 if not integral else 2)
        if kind == 0:
            h = np.block([[eye(n), s], [zeros(n, n), eye(n)]])
        elif kind == 1:
            h = np.block([[eye(n), zeros(n, n)], [s, eye(n)]])
        else:
            a = random_gl(n, rng, height)
            h = np.block([[a, zeros(n, n)], [zeros(n, n), inv(a.T)]])
        g = g.dot(h)
    return g


def random_gsp(n: int, rng: random.Random, height: int = 3, mu: Fraction | None = None) -> np.ndarray:
    if mu is None:
        mu = _rand_frac(rng, height) or Fraction(1)
    d = np.block([[eye(n), zeros(n, n)], [zeros(n, n), mu * eye(n)]])
    return random_sp(n, rng, height).dot(d)


# --- finite groups and volumes ---------------------------------------------------

def sp_group_order(n: int, p: int, m: int) -> int:
    """``|Sp(2n, Z/p^m)| = p^((m-1) n (2n+1)) * p^(n^2) * prod (p^(2i) - 1)``."""
    if n < 1 or m < 1 or p < 2:
        raise ValueError("need n >= 1, m >= 1 and p prime")
    out = p ** ((m - 1) * n * (2 * n + 1) + n * n)
    for i in range(1, n + 1):
        out *= p ** (2 * i) - 1
    return out


def vol_principal_congruence(n: int, N_factored: Sequence[tuple[int, int]]) -> Fraction:
    """Normalized volume of ``Gamma(N)`` in ``Sp(2n, Z_hat)``: ``prod 1/|Sp(2n, Z/p^m)|``."""
    out = Fraction(1)
    seen = set()
    for p, m in N_factored:
        if p in seen:
            raise ValueError(f"prime {p} repeated in factorization")
        seen.add(p)
        out /= sp_group_order(n, p, m)
    return out


def siegel_volume(n: int) -> ScaledConstant:
    """``vol(Sp(2n,Z) \\ H_n) = 2 prod_{k<=n} zeta(2k) (k-1)! pi^-k``
    with respect to ``det(Y)^-(n+1) dX dY``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = ScaledConstant(2)
    for k in range(1, n + 1):
        out = out * zeta_even(k) * ScaledConstant(math.factorial(k - 1), pi_exp=-k)
    return out


def is_p_integral(m, p: int) -> bool:
    return all(x.denominator % p for x in exact(m).flat)


def congruent_to_identity(m, p: int, e: int) -> bool:
    """True when ``m`` is p-integral and ``m = I (mod p^e)``."""
    m = exact(m)
    if not is_p_integral(m, p):
        return False
    d = m - eye(m.shape[0])
    pe = p ** e
    for x in d.flat:
        # x = a/b with p not dividing b; x = 0 mod p^e iff p^e | a
        if x.numerator % pe:
            return False
    return True


def congruence_forward_check(n: int, p: int, m: int, h, q) -> bool:
    """If ``h`` is in ``Gamma(p^m)`` of ``Sp(2n)`` and ``q`` is a p-integral
    Siegel-parabolic element of ``Sp(4n)`` congruent to ``I`` mod ``p^m``,
    check that ``Q_n^-1 q Q_n (h, 1)`` is again congruent to ``I`` mod ``p^m``.

    Returns True when the implication holds (vacuously if a hypothesis fails).
    """
    h, q = _arr(h), _arr(q)
    for x in (h, q):
        if not is_p_integral(x, p):
            raise ValueError(f"input is not {p}-integral")
    if not (congruent_to_identity(h, p, m) and congruent_to_identity(q, p, m)):
        return True
    Q = coset_representative(n, n)
    X = inv(Q).dot(q).dot(Q).dot(embed_pair(h, eye(2 * n)))
    return congruent_to_identity(X, p, m)
