"""Dirichlet characters and their Gauss sums in exact cyclotomic arithmetic.

An element of ``Q(zeta_L)`` is stored as an integer-or-rational coefficient
vector of length ``L`` representing a class in ``Q[x]/(x^L - 1)``; equality
is decided after reduction modulo the cyclotomic polynomial ``Phi_L``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterator, Sequence

import numpy as np

from .algebra import Polynomial


def factorize(N: int) -> list[tuple[int, int]]:
    if N < 1:
        raise ValueError("modulus must be positive")
    out = []
    p = 2
    while p * p <= N:
        if N % p == 0:
            e = 0
            while N % p == 0:
                N //= p
                e += 1
            out.append((p, e))
        p += 1
    if N > 1:
        out.append((N, 1))
    return out


def _mobius(m: int) -> int:
    out = 1
    for p, e in factorize(m):
        if e > 1:
            return 0
        out = -out
    return out


@lru_cache(maxsize=None)
def cyclotomic_coeffs(L: int) -> tuple[int, ...]:
    """Integer coefficients of ``Phi_L`` (lowest degree first), computed as
    ``prod_{d | L} (x^d - 1)^mu(L/d)`` with sparse multiplications and divisions."""
    if L < 1:
        raise ValueError("level must be positive")
    poly = [1]
    divs = [d for d in range(1, L + 1) if L % d == 0]
    ups = [d for d in divs if _mobius(L // d) == 1]
    downs = [d for d in divs if _mobius(L // d) == -1]
    for d in ups:  # multiply by (x^d - 1)
        out = [0] * (len(poly) + d)
        for i, c in enumerate(poly):
            out[i + d] += c
            out[i] -= c
        poly = out
    for d in downs:  # divide exactly by (x^d - 1): q_i = q_{i-d} - p_i
        deg = len(poly) - 1 - d
        q = [0] * (deg + 1)
        for i in range(deg + 1):
            q[i] = (q[i - d] if i >= d else 0) - poly[i]
        poly = q
    return tuple(poly)


def cyclotomic_poly(L: int) -> Polynomial:
    return Polynomial(cyclotomic_coeffs(L))


_SAFE = 2 ** 52


def _to_int_array(v) -> np.ndarray:
    arr = np.array([int(x) for x in v], dtype=object)
    if arr.size == 0 or max(abs(int(x)) for x in arr) < _SAFE:
        return arr.astype(np.int64)
    return arr


def _reduce_mod_cyclotomic(num: np.ndarray, L: int) -> np.ndarray:
    """Remainder of an integer coefficient vector (length ``L``) modulo ``Phi_L``.

    Uses ``Phi_L(x) = Phi_r(x^m)`` with ``r = rad(L)``, ``m = L / r``: the
    ``m`` interleaved columns are reduced modulo ``Phi_r`` simultaneously.
    """
    r = math.prod(p for p, _ in factorize(L)) if L > 1 else 1
    m = L // r
    phi = np.array(cyclotomic_coeffs(r), dtype=np.int64)
    deg = phi.size - 1
    grid = np.asarray(num).reshape(r, m).copy()  # grid[j, k] = coeff of x^(j m + k)
    B = int(np.abs(phi).max())
    use_int = grid.dtype == np.int64
    bound = int(np.abs(grid).max(initial=0)) if use_int else 0
    col = phi[:, None]
    if not use_int:
        col = col.astype(object)
    for j in range(r - 1, deg - 1, -1):
        c = grid[j]
        if use_int:
            cmax = int(np.abs(c).max(initial=0))
            if cmax == 0:
                continue
            bound += cmax * B
            if bound >= 2 ** 62:
                grid, use_int, col = grid.astype(object), False, col.astype(object)
                c = grid[j]
        grid[j - deg:j + 1] -= col * c[None, :]
    return grid[:deg].reshape(-1)


class CyclotomicNumber:
    """An element ``(sum_i num[i] x^i) / den`` of ``Q(zeta_L)`` with ``L = level``.

    ``num`` holds integers; arithmetic between different levels lifts both
    operands to the lcm level.
    """

    __slots__ = ("level", "num", "den")

    def __init__(self, level: int, coeffs: Sequence, den: int = 1):
        if level < 1:
            raise ValueError("level must be positive")
        folded = [0] * level
        if all(isinstance(c, (int, np.integer)) for c in coeffs):
            common = 1
            for i, c in enumerate(coeffs):
                folded[i % level] += int(c)
        else:
            fr = [Fraction(c) for c in coeffs]
            common = math.lcm(*[f.denominator for f in fr]) if fr else 1
            for i, f in enumerate(fr):
                folded[i % level] += int(f * common)
        self.level = level
        self.num = _to_int_array(folded)
        self.den = int(den) * common
        if self.den <= 0:
            raise ValueError("denominator must be positive")

    @classmethod
    def _raw(cls, level: int, num: np.ndarray, den: int) -> "CyclotomicNumber":
        obj = cls.__new__(cls)
        obj.level, obj.num, obj.den = level, num, den
        return obj

    @property
    def coeffs(self) -> list[Fraction]:
        return [Fraction(int(c), self.den) for c in self.num]

    @classmethod
    def root_of_unity(cls, level: int, e: int) -> "CyclotomicNumber":
        c = [0] * level
        c[e % level] = 1
        return cls(level, c)

    @classmethod
    def rational(cls, q) -> "CyclotomicNumber":
        return cls(1, [q])

    def lift(self, L: int) -> "CyclotomicNumber":
        if L % self.level:
            raise ValueError(f"cannot lift level {self.level} to {L}")
        out = np.zeros(L, dtype=self.num.dtype)
        out[:: L // self.level] = self.num
        return self._raw(L, out, self.den)

    def _align(self, o: "CyclotomicNumber"):
        L = math.lcm(self.level, o.level)
        a, b = self.lift(L), o.lift(L)
        d = math.lcm(a.den, b.den)
        an = a.num * (d // a.den) if d != a.den else a.num
        bn = b.num * (d // b.den) if d != b.den else b.num
        if an.dtype != bn.dtype:
            an, bn = an.astype(object), bn.astype(object)
        return an, bn, L, d

    def __add__(self, o):
        an, bn, L, d = self._align(_coerce(o))
        return self._raw(L, an + bn, d)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.level, -self.num, self.den)

    def __sub__(self, o):
        an, bn, L, d = self._align(_coerce(o))
        return self._raw(L, an - bn, d)

    def __mul__(self, o):
        o = _coerce(o)
        L = math.lcm(self.level, o.level)
        a, b = self.lift(L), o.lift(L)
        ia, ib = np.flatnonzero(a.num), np.flatnonzero(b.num)
        va, vb = a.num[ia], b.num[ib]
        fast = (va.dtype == np.int64 and vb.dtype == np.int64 and
                int(np.abs(va).sum()) * int(np.abs(vb).max(initial=0)) < _SAFE)
        if not fast:
            va, vb = va.astype(object), vb.astype(object)
        # sparse product: only nonzero supports interact
        idx = (ia[:, None] + ib[None, :]) % L
        out = np.zeros(L, dtype=np.int64 if fast else object)
        np.add.at(out, idx.ravel(), (va[:, None] * vb[None, :]).ravel())
        return self._raw(L, out, a.den * b.den)

    __rmul__ = __mul__

    def conj(self) -> "CyclotomicNumber":
        idx = (-np.arange(self.level)) % self.level
        out = np.zeros_like(self.num)
        out[idx] = self.num
        return self._raw(self.level, out, self.den)

    def reduced(self) -> Polynomial:
        """Canonical representative modulo ``Phi_level``."""
        r = _reduce_mod_cyclotomic(self.num, self.level)
        return Polynomial([Fraction(int(c), self.den) for c in r])

    def is_zero(self) -> bool:
        r = _reduce_mod_cyclotomic(self.num, self.level)
        return not np.any(r != 0)

    def __eq__(self, o) -> bool:
        try:
            o = _coerce(o)
        except TypeError:
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        raise TypeError("CyclotomicNumber is not hashable")

    def to_complex(self) -> complex:
        k = np.arange(self.level)
        vals = np.exp(2j * np.pi * k / self.level)
        return complex(np.dot(self.num.astype(float), vals) / self.den)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"CyclotomicNumber(L={self.level}: {' + '.join(terms) or '0'})"


def _coerce(o) -> CyclotomicNumber:
    if isinstance(o, CyclotomicNumber):
        return o
    if isinstance(o, (int, Fraction)):
        return CyclotomicNumber.rational(o)
    raise TypeError(f"cannot coerce {type(o).__name__}")


def _unit_group_generators(N: int) -> list[tuple[int, int]]:
    """Generators of ``(Z/N)^*`` with their orders, one block per prime power."""
    gens = []
    for p, e in factorize(N):
        q = p ** e
        rest = N // q
        def lift(g):
            # CRT: x = g mod q, x = 1 mod rest
            if rest == 1:
                return g % N
            t = ((g - 1) * pow(rest, -1, q)) % q
            return (1 + rest * t) % N
        if p == 2:
            if e == 1:
                continue
            gens.append((lift(q - 1), 2))
            if e >= 3:
                gens.append((lift(5), 2 ** (e - 2)))
        else:
            phi = q - q // p
            g = next(g for g in range(2, q) if math.gcd(g, p) == 1 and
                     all(pow(g, phi // r, q) != 1 for r, _ in factorize(phi)))
            gens.append((lift(g), phi))
    return gens


@dataclass(frozen=True)
class DirichletCharacter:
    """``chi(a) = zeta_order^(exponents[a])`` on units modulo ``modulus``."""

    modulus: int
    order: int
    exponents: tuple  # ((a, e), ...) over units a

    def table(self) -> dict[int, int]:
        return dict(self.exponents)

    def __call__(self, a: int) -> CyclotomicNumber:
        a %= self.modulus
        t = self.table()
        if a not in t:
            return CyclotomicNumber.rational(0)
        return CyclotomicNumber.root_of_unity(self.order, t[a])

    def is_primitive(self) -> bool:
        return self.conductor() == self.modulus

    def conductor(self) -> int:
        t = self.table()
        for d in sorted(d for d in range(1, self.modulus + 1) if self.modulus % d == 0):
            if all(e % self.order == 0 for a, e in t.items() if (a - 1) % d == 0):
                return d
        return self.modulus

    def parity(self) -> int:
        """0 when ``chi(-1) = 1`` and 1 when ``chi(-1) = -1``."""
        if self.modulus <= 2:
            return 0
        e = self.table()[self.modulus - 1] % self.order
        return 0 if e == 0 else 1

    def conjugate(self) -> "DirichletCharacter":
        return DirichletCharacter(self.modulus, self.order,
                                  tuple((a, -e % self.order) for a, e in self.exponents))

    def __mul__(self, o: "DirichletCharacter") -> "DirichletCharacter":
        M = math.lcm(self.modulus, o.modulus)
        ordr = math.lcm(self.order, o.order)
        t1, t2 = self.table(), o.table()
        ex = []
        for a in range(M):
            if math.gcd(a, M) == 1:
                e = t1[a % self.modulus] * (ordr // self.order) + t2[a % o.modulus] * (ordr // o.order)
                ex.append((a, e % ordr))
        return _reduce_order(M, ordr, ex)


def _reduce_order(M: int, ordr: int, ex: list) -> DirichletCharacter:
    g = ordr
    for _, e in ex:
        g = math.gcd(g, e)
    g = g or ordr
    return DirichletCharacter(M, ordr // g, tuple((a, e // g) for a, e in ex))


def characters_mod(N: int) -> Iterator[DirichletCharacter]:
    """All Dirichlet characters modulo ``N`` (the trivial one first)."""
    gens = _unit_group_generators(N)
    units = [a for a in range(N) if math.gcd(a, N) == 1] if N > 1 else [0]
    # discrete logs of every unit with respect to the generators
    logs = {}
    for exps in iproduct(*[range(o) for _, o in gens]):
        x = 1 % N
        for (g, _), e in zip(gens, exps):
            x = (x * pow(g, e, N)) % N
        logs[x] = exps
    if len(logs) != len(units):
        raise ArithmeticError("generator search failed")
    orders = [o for _, o in gens]
    L = math.lcm(*orders) if orders else 1
    for choice in iproduct(*[range(o) for o in orders]):
        ex = []
        for a in units:
            e = sum(c * l * (L // o) for c, l, o in zip(choice, logs[a % N if N > 1 else 0], orders))
            ex.append((a, e % L))
        yield _reduce_order(N, L, ex)


@lru_cache(maxsize=None)
def _primitive_cached(N: int) -> tuple:
    return tuple(c for c in characters_mod(N) if c.is_primitive())


def primitive_characters(N: int) -> list[DirichletCharacter]:
    return list(_primitive_cached(N))


def gauss_sum(chi: DirichletCharacter) -> CyclotomicNumber:
    """``G(chi) = sum_a chi(a) zeta_N^a`` for a primitive ``chi``.

    Real characters give a length-``N`` vector with entries ``chi(a)``.  For
    higher order the values ``chi(a)`` are themselves roots of unity and the
    sum lives at level ``L = lcm(N, order)``.
    """
    if not chi.is_primitive():
        raise ValueError(f"character mod {chi.modulus} is not primitive "
                         f"(conductor {chi.conductor()})")
    N = chi.modulus
    if chi.order <= 2:
        c = [0] * N
        for a, e in chi.exponents:
            c[a % N] += -1 if e % 2 else 1
        return CyclotomicNumber(N, c)
    L = math.lcm(N, chi.order)
    c = [0] * L
    for a, e in chi.exponents:
        c[(a * (L // N) + e * (L // chi.order)) % L] += 1
    return CyclotomicNumber(L, c)
