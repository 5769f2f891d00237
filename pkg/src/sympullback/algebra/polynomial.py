"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


class Polynomial:
    """Polynomial in one variable; ``coeffs[i]`` multiplies ``x**i``.

    Instances are immutable and hashable.  Trailing zeros are stripped so the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [_frac(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors
    @classmethod
    def const(cls, a: Scalar) -> "Polynomial":
        return cls([a])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def linear(cls, a: Scalar, b: Scalar) -> "Polynomial":
        """The polynomial ``a*x + b``."""
        return cls([b, a])

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar]) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # basic properties
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial([other])
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("Polynomial", self.coeffs))

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    # arithmetic
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial([other])

    def __add__(self, other) -> "Polynomial":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Polynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Polynomial([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Polynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        inv = 1 / o.lead
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Polynomial(quot), Polynomial(rem[: len(o.coeffs) - 1])

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        return self.divmod(self._coerce(other))

    def __floordiv__(self, other) -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other) -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return Polynomial(c * inv for c in self.coeffs)

    def scale(self, c: Scalar) -> "Polynomial":
        c = _frac(c)
        return Polynomial(a * c for a in self.coeffs)

    # evaluation and substitution
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else _to_num(c, x))
        return acc

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def subs_linear(self, a: Scalar, b: Scalar) -> "Polynomial":
        """Substitute ``x -> a*x + b``."""
        return self.compose(Polynomial.linear(a, b))

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content_denominator(self) -> int:
        """Least common denominator of the coefficients."""
        from math import lcm

        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return d

    def rational_roots(self) -> list[Fraction]:
        """Rational roots with multiplicity (rational root theorem)."""
        from math import gcd

        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        p = self
        roots: list[Fraction] = []
        while p.degree >= 1 and p[0] == 0:
            roots.append(Fraction(0))
            p = p // Polynomial.x()
        if p.degree < 1:
            return roots
        d = p.content_denominator()
        ints = [int(c * d) for c in p.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        ints = [v // g for v in ints]
        a0, an = abs(ints[0]), abs(ints[-1])
        cands = set()
        for num in _divisors(a0):
            for den in _divisors(an):
                cands.add(Fraction(num, den))
                cands.add(Fraction(-num, den))
        for r in sorted(cands):
            while p.degree >= 1 and p(r) == 0:
                roots.append(r)
                p = p // Polynomial([-r, 1])
        return roots


def _divisors(m: int) -> list[int]:
    out = []
    i = 1
    while i * i <= m:
        if m % i == 0:
            out.append(i)
            if i * i != m:
                out.append(m // i)
        i += 1
    return out


def _to_num(c: Fraction, like):
    # match the numeric type of the evaluation point
    try:
        import mpmath

        if isinstance(like, (mpmath.mpf, mpmath.mpc)):
            return mpmath.mpf(c.numerator) / c.denominator
    except ImportError:  # pragma: no cover
        pass
    return c.numerator / c.denominator


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (Euclid)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def prod(polys: Sequence[Polynomial]) -> Polynomial:
    out = Polynomial([1])
    for p in polys:
        out = out * p
    return out
