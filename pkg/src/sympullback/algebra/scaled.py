"""Exact constants of the shape ``q * pi^a * i^b * 2^(c*x + d)``.

The affine power of two lets a single object carry factors such as
``2^(-n z + n)`` that depend on a spectral variable.  ``ExpRational`` pairs
such a constant with a rational function in the same variable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .polynomial import Scalar, _frac
from .ratfun import RationalFunction


def _canon(rational: Fraction, pi_exp: int, i_pow: int, a: Fraction, b: Fraction):
    if rational == 0:
        return Fraction(0), 0, 0, Fraction(0), Fraction(0)
    i_pow %= 4
    if i_pow >= 2:
        rational, i_pow = -rational, i_pow - 2
    whole = math.floor(b)
    if whole:
        rational = rational * (Fraction(2) ** whole)
        b -= whole
    return rational, pi_exp, i_pow, a, b


@dataclass(frozen=True)
class ScaledConstant:
    """``rational * pi**pi_exp * i**i_pow * 2**(two_exp[0]*x + two_exp[1])``.

    The representation is canonical: the integer part of the constant power
    of two is folded into ``rational`` and ``i_pow`` is 0 or 1 (a factor
    ``i**2`` becomes a sign), so equal constants compare equal.
    """

    rational: Fraction
    pi_exp: int = 0
    i_pow: int = 0
    two_exp: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        q, p, i, a, b = _canon(_frac(self.rational), int(self.pi_exp), int(self.i_pow),
                               _frac(self.two_exp[0]), _frac(self.two_exp[1]))
        object.__setattr__(self, "rational", q)
        object.__setattr__(self, "pi_exp", p)
        object.__setattr__(self, "i_pow", i)
        object.__setattr__(self, "two_exp", (a, b))

    @classmethod
    def one(cls) -> "ScaledConstant":
        return cls(Fraction(1))

    @classmethod
    def power_of_two(cls, slope: Scalar, offset: Scalar) -> "ScaledConstant":
        return cls(Fraction(1), two_exp=(_frac(slope), _frac(offset)))

    def is_zero(self) -> bool:
        return self.rational == 0

    def is_constant(self) -> bool:
        """True when no power of two depends on the variable."""
        return self.two_exp[0] == 0

    def is_rational(self) -> bool:
        return self.pi_exp == 0 and self.i_pow == 0 and self.two_exp == (0, 0)

    def __mul__(self, o) -> "ScaledConstant":
        if isinstance(o, (int, Fraction)):
            o = ScaledConstant(_frac(o))
        if not isinstance(o, ScaledConstant):
            return NotImplemented
        return ScaledConstant(self.rational * o.rational, self.pi_exp + o.pi_exp,
                              self.i_pow + o.i_pow,
                              (self.two_exp[0] + o.two_exp[0], self.two_exp[1] + o.two_exp[1]))

    __rmul__ = __mul__

    def inverse(self) -> "ScaledConstant":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero constant")
        return ScaledConstant(1 / self.rational, -self.pi_exp, -self.i_pow,
                              (-self.two_exp[0], -self.two_exp[1]))

    def __truediv__(self, o) -> "ScaledConstant":
        if isinstance(o, (int, Fraction)):
            o = ScaledConstant(_frac(o))
        return self * o.inverse()

    def __pow__(self, e: int) -> "ScaledConstant":
        if e < 0:
            return self.inverse() ** (-e)
        return ScaledConstant(self.rational ** e, self.pi_exp * e, self.i_pow * e,
                              (self.two_exp[0] * e, self.two_exp[1] * e))

    def __neg__(self) -> "ScaledConstant":
        return self * -1

    def subs_linear(self, a: Scalar, b: Scalar) -> "ScaledConstant":
        """Rewrite the variable ``x -> a*x + b`` inside the power of two."""
        c, d = self.two_exp
        return ScaledConstant(self.rational, self.pi_exp, self.i_pow,
                              (c * _frac(a), c * _frac(b) + d))

    def evaluate(self, x=None, dps: int | None = None):
        """High-precision numeric value (mpmath ``mpf`` or ``mpc``)."""
        with mpmath.workdps(dps or mpmath.mp.dps):
            if self.two_exp[0] != 0 and x is None:
                raise ValueError("constant depends on a variable; supply x")
            v = mpmath.mpf(self.rational.numerator) / self.rational.denominator
            v *= mpmath.pi ** self.pi_exp
            e = mpmath.mpf(self.two_exp[1].numerator) / self.two_exp[1].denominator
            if self.two_exp[0] != 0:
                e += (mpmath.mpf(self.two_exp[0].numerator) / self.two_exp[0].denominator) * x
            v *= mpmath.power(2, e)
            if self.i_pow:
                v *= mpmath.mpc(0, 1)
            return v

    def __complex__(self) -> complex:
        return complex(self.evaluate())

    def __float__(self) -> float:
        if self.i_pow:
            raise TypeError("constant is not real")
        return float(self.evaluate())

    def __str__(self) -> str:
        parts = [str(self.rational)]
        if self.pi_exp:
            parts.append(f"pi^{self.pi_exp}")
        if self.i_pow:
            parts.append("i")
        a, b = self.two_exp
        if a or b:
            parts.append(f"2^({a}*x + {b})" if a else f"2^({b})")
        return " * ".join(parts)


@dataclass(frozen=True)
class ExpRational:
    """A product ``constant * ratfun`` in one variable.

    The rational function is kept with a monic numerator so that the
    decomposition is unique; any leading coefficient lives in ``constant``.
    """

    constant: ScaledConstant
    ratfun: RationalFunction = field(default_factory=lambda: RationalFunction.const(1))

    def __post_init__(self):
        c, monic = self.ratfun.normalized()
        if c == 0:
            object.__setattr__(self, "constant", ScaledConstant(0))
            object.__setattr__(self, "ratfun", RationalFunction.const(1))
            return
        object.__setattr__(self, "constant", self.constant * c)
        object.__setattr__(self, "ratfun", monic)

    def __mul__(self, o) -> "ExpRational":
        if isinstance(o, ExpRational):
            return ExpRational(self.constant * o.constant, self.ratfun * o.ratfun)
        if isinstance(o, ScaledConstant):
            return ExpRational(self.constant * o, self.ratfun)
        if isinstance(o, (RationalFunction, int, Fraction)):
            return ExpRational(self.constant, self.ratfun * o)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, o: "ExpRational") -> "ExpRational":
        return ExpRational(self.constant / o.constant, self.ratfun / o.ratfun)

    def subs_linear(self, a: Scalar, b: Scalar) -> "ExpRational":
        return ExpRational(self.constant.subs_linear(a, b), self.ratfun.subs_linear(a, b))

    def at(self, x: Scalar) -> ScaledConstant:
        """Exact value at a rational point, returned as a constant."""
        x = _frac(x)
        val = self.ratfun(x)
        c = self.constant
        a, b = c.two_exp
        return ScaledConstant(c.rational * val, c.pi_exp, c.i_pow, (Fraction(0), a * x + b))

    def evaluate(self, x, dps: int | None = None):
        with mpmath.workdps(dps or mpmath.mp.dps):
            xm = mpmath.mpmathify(x)
            num = self.ratfun.num(xm)
            den = self.ratfun.den(xm)
            if den == 0:
                raise ZeroDivisionError(f"pole at {x}")
            return self.constant.evaluate(xm) * num / den

    def __str__(self) -> str:
        return f"{self.constant} * ({self.ratfun.num}) / ({self.ratfun.den})"
