"""Rational functions over Q and truncated power series."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .polynomial import Polynomial, Scalar, _frac, poly_gcd


class RationalFunction:
    """Quotient ``num/den`` kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial([num])
        den = Polynomial([1]) if den is None else (
            den if isinstance(den, Polynomial) else Polynomial([den]))
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.lead
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def const(cls, c: Scalar) -> "RationalFunction":
        return cls(Polynomial([c]))

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls(Polynomial.x())

    @staticmethod
    def _coerce(o) -> "RationalFunction":
        if isinstance(o, RationalFunction):
            return o
        if isinstance(o, Polynomial):
            return RationalFunction(o)
        return RationalFunction(Polynomial([o]))

    def __add__(self, o) -> "RationalFunction":
        o = self._coerce(o)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, o) -> "RationalFunction":
        return self + (-self._coerce(o))

    def __rsub__(self, o) -> "RationalFunction":
        return self._coerce(o) - self

    def __mul__(self, o) -> "RationalFunction":
        o = self._coerce(o)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o) -> "RationalFunction":
        o = self._coerce(o)
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o) -> "RationalFunction":
        return self._coerce(o) / self

    def __pow__(self, e: int) -> "RationalFunction":
        if e >= 0:
            return RationalFunction(self.num ** e, self.den ** e)
        return RationalFunction(self.den ** (-e), self.num ** (-e))

    def __eq__(self, o) -> bool:
        try:
            o = self._coerce(o)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at {x}")
        return self.num(x) / d

    def subs_linear(self, a: Scalar, b: Scalar) -> "RationalFunction":
        """Substitute ``x -> a*x + b``."""
        return RationalFunction(self.num.subs_linear(a, b), self.den.subs_linear(a, b))

    def normalized(self) -> tuple[Fraction, "RationalFunction"]:
        """Split off the leading numerator coefficient: ``self = c * monic``."""
        if self.num.is_zero():
            return Fraction(0), RationalFunction(Polynomial([1]))
        c = self.num.lead
        return c, RationalFunction(self.num.scale(1 / c), self.den)

    def poles(self) -> list[Fraction]:
        return self.den.rational_roots()


class TruncatedSeries:
    """Power series ``sum c_i x^i`` known modulo ``x^(order+1)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]):
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, o) -> bool:
        if isinstance(o, TruncatedSeries):
            return self.coeffs == o.coeffs
        if isinstance(o, (list, tuple)):
            return self.coeffs == tuple(_frac(c) for c in o)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"

    def __mul__(self, o: "TruncatedSeries") -> "TruncatedSeries":
        m = min(self.order, o.order)
        out = [Fraction(0)] * (m + 1)
        for i in range(m + 1):
            a = self.coeffs[i]
            if a:
                for j in range(m + 1 - i):
                    out[i + j] += a * o.coeffs[j]
        return TruncatedSeries(out)

    def __add__(self, o: "TruncatedSeries") -> "TruncatedSeries":
        m = min(self.order, o.order)
        return TruncatedSeries(self.coeffs[i] + o.coeffs[i] for i in range(m + 1))


class PoleAtOrigin(ZeroDivisionError):
    """Raised when expanding a rational function whose denominator vanishes at 0."""


def series_expand(f: RationalFunction, order: int) -> TruncatedSeries:
    """Taylor coefficients of ``f`` at 0 through ``x**order``."""
    if order < 0:
        raise ValueError("order must be non-negative")
    d0 = f.den[0]
    if d0 == 0:
        raise PoleAtOrigin("rational function has a pole at the origin")
    inv = 1 / d0
    out: list[Fraction] = []
    for m in range(order + 1):
        acc = f.num[m]
        for j in range(1, min(m, f.den.degree) + 1):
            acc -= f.den[j] * out[m - j]
        out.append(acc * inv)
    return TruncatedSeries(out)


def product(fs: Sequence[RationalFunction]) -> RationalFunction:
    out = RationalFunction.const(1)
    for f in fs:
        out = out * f
    return out
