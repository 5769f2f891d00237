"""Products of Gamma factors with affine arguments and their simplification.

Three kinds of factor are supported, keyed by a single letter:

``"G"``  the Euler Gamma function ``Gamma(x)``
``"R"``  ``Gamma_R(x) = pi^(-x/2) Gamma(x/2)``
``"C"``  ``Gamma_C(x) = 2 (2 pi)^(-x) Gamma(x)``

Arguments are affine in one variable ``s``: the key ``(kind, a, b)`` stands
for the factor evaluated at ``a*s + b`` and maps to a signed multiplicity.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import mpmath

from .polynomial import Polynomial, Scalar, _frac
from .ratfun import RationalFunction
from .scaled import ScaledConstant

KINDS = ("G", "R", "C")
FactorKey = tuple  # (kind, a, b)


class GammaPoleError(ArithmeticError):
    """A Gamma factor or the rational part is evaluated at a pole."""


@dataclass(frozen=True)
class GammaExpression:
    """``prefactor * ratfun(s) * prod factor(a*s + b)**mult``."""

    prefactor: ScaledConstant = field(default_factory=ScaledConstant.one)
    factors: tuple = ()
    ratfun: RationalFunction = field(default_factory=lambda: RationalFunction.const(1))

    def __post_init__(self):
        merged: dict = defaultdict(int)
        items = self.factors.items() if isinstance(self.factors, Mapping) else self.factors
        for key, mult in items:
            kind, a, b = key
            if kind not in KINDS:
                raise ValueError(f"unknown Gamma kind {kind!r}")
            a, b = _frac(a), _frac(b)
            if a == 0:
                raise ValueError("constant Gamma arguments belong in the prefactor")
            merged[(kind, a, b)] += int(mult)
        object.__setattr__(self, "factors",
                           tuple(sorted((k, m) for k, m in merged.items() if m)))

    @classmethod
    def factor(cls, kind: str, a: Scalar, b: Scalar, mult: int = 1) -> "GammaExpression":
        return cls(factors=(((kind, a, b), mult),))

    def factor_dict(self) -> dict:
        return dict(self.factors)

    def __mul__(self, o) -> "GammaExpression":
        if isinstance(o, ScaledConstant):
            return GammaExpression(self.prefactor * o, self.factors, self.ratfun)
        if isinstance(o, (RationalFunction, Polynomial, int, Fraction)):
            return GammaExpression(self.prefactor, self.factors, self.ratfun * o)
        if not isinstance(o, GammaExpression):
            return NotImplemented
        return GammaExpression(self.prefactor * o.prefactor,
                               self.factors + o.factors, self.ratfun * o.ratfun)

    __rmul__ = __mul__

    def inverse(self) -> "GammaExpression":
        return GammaExpression(self.prefactor.inverse(),
                               tuple((k, -m) for k, m in self.factors),
                               1 / self.ratfun)

    def __truediv__(self, o: "GammaExpression") -> "GammaExpression":
        return self * o.inverse()

    def is_gamma_free(self) -> bool:
        return not self.factors

    def __str__(self) -> str:
        name = {"G": "Gamma", "R": "Gamma_R", "C": "Gamma_C"}
        parts = [str(self.prefactor)]
        if self.ratfun != 1:
            parts.append(f"({self.ratfun.num})/({self.ratfun.den})")
        for (kind, a, b), m in self.factors:
            arg = f"{a}*s + {b}" if a != 1 else f"s + {b}"
            parts.append(f"{name[kind]}({arg})" + (f"^{m}" if m != 1 else ""))
        return " * ".join(parts)


def _lin(a: Fraction, b: Fraction) -> Polynomial:
    return Polynomial.linear(a, b)


def _halve_family(factors: dict, pref: list) -> None:
    """Rewrite Gamma_R(2x) = 2^(x-1) Gamma_R(x) Gamma_R(x+1) towards the
    smallest slope present in each family of slopes related by powers of 2."""
    slopes = sorted({k[1] for k in factors if k[0] == "R"}, key=abs)
    target: dict = {}
    for a in slopes:
        base = a
        for c in slopes:
            if abs(c) >= abs(a):
                break
            r = a / c
            if r > 0 and r.denominator == 1 and (r.numerator & (r.numerator - 1)) == 0:
                base = c
                break
        target[a] = base
    changed = True
    while changed:
        changed = False
        for key in sorted(factors):
            kind, a, b = key
            m = factors[key]
            if kind != "R" or m == 0 or target.get(a, a) == a:
                continue
            del factors[key]
            x_a, x_b = a / 2, b / 2
            factors[("R", x_a, x_b)] = factors.get(("R", x_a, x_b), 0) + m
            factors[("R", x_a, x_b + 1)] = factors.get(("R", x_a, x_b + 1), 0) + m
            target.setdefault(x_a, target[a])
            pref[0] = pref[0] * ScaledConstant.power_of_two(x_a, x_b - 1) ** m
            changed = True
            break


def _cancel_shifts(factors: dict, pref: list, rat: list) -> None:
    classes: dict = defaultdict(lambda: ([], []))
    for (kind, a, b), m in factors.items():
        period = 2 if kind == "R" else 1
        key = (kind, a, b % period)
        nums, dens = classes[key]
        (nums if m > 0 else dens).extend([b] * abs(m))
    new: dict = defaultdict(int)
    for (kind, a, _), (nums, dens) in sorted(classes.items()):
        nums.sort()
        dens.sort()
        k = min(len(nums), len(dens))
        for bn, bd in zip(nums[:k], dens[:k]):
            shift = bn - bd
            step = 2 if kind == "R" else 1
            count = int(shift / step)
            lo, sign = (bd, 1) if count >= 0 else (bn, -1)
            for i in range(abs(count)):
                if kind == "R":
                    term = RationalFunction(_lin(a / 2, (lo + 2 * i) / 2))
                    c = ScaledConstant(1, pi_exp=-1)
                else:
                    term = RationalFunction(_lin(a, lo + i))
                    c = ScaledConstant.one()
                rat[0] = rat[0] * term if sign > 0 else rat[0] / term
                pref[0] = pref[0] * c if sign > 0 else pref[0] / c
        for b in nums[k:]:
            new[(kind, a, b)] += 1
        for b in dens[k:]:
            new[(kind, a, b)] -= 1
    factors.clear()
    factors.update({k: m for k, m in new.items() if m})


def _refold(factors: dict) -> None:
    """Gamma_R(x) Gamma_R(x+1) -> Gamma_C(x), greedily in increasing x."""
    for key in sorted(k for k in factors if k[0] == "R"):
        m = factors.get(key, 0)
        if not m:
            continue
        _, a, b = key
        partner = ("R", a, b + 1)
        m2 = factors.get(partner, 0)
        if m2 and (m > 0) == (m2 > 0):
            t = min(abs(m), abs(m2)) * (1 if m > 0 else -1)
            factors[key] -= t
            factors[partner] -= t
            factors[("C", a, b)] = factors.get(("C", a, b), 0) + t
    for k in [k for k, m in factors.items() if m == 0]:
        del factors[k]


def gamma_simplify(g: GammaExpression) -> GammaExpression:
    """Canonical form under shift, duplication and the slope-halving rule.

    Gamma_C factors are split into pairs of Gamma_R factors, related slopes
    are brought to a common base, numerator and denominator factors whose
    arguments differ by an integral step are cancelled into rational factors,
    and adjacent Gamma_R pairs are folded back into Gamma_C.  The result has
    a monic rational part and is idempotent under a second call.
    """
    factors: dict = defaultdict(int)
    for (kind, a, b), m in g.factors:
        if kind == "C":
            factors[("R", a, b)] += m
            factors[("R", a, b + 1)] += m
        else:
            factors[(kind, a, b)] += m
    factors = {k: m for k, m in factors.items() if m}
    pref = [g.prefactor]
    rat = [g.ratfun]
    _halve_family(factors, pref)
    factors = {k: m for k, m in factors.items() if m}
    _cancel_shifts(factors, pref, rat)
    _refold(factors)
    c, monic = rat[0].normalized()
    return GammaExpression(pref[0] * c, tuple(factors.items()), monic)


def _factor_value(kind: str, x):
    if kind == "G":
        arg = x
    elif kind == "R":
        arg = x / 2
    else:
        arg = x
    if mpmath.isint(arg) and mpmath.re(arg) <= 0:
        raise GammaPoleError(f"Gamma_{kind} pole at argument {x}")
    if kind == "G":
        return mpmath.gamma(x)
    if kind == "R":
        return mpmath.power(mpmath.pi, -x / 2) * mpmath.gamma(x / 2)
    return 2 * mpmath.power(2 * mpmath.pi, -x) * mpmath.gamma(x)


def gamma_eval(g: GammaExpression, s, dps: int = 30):
    """Numeric value at ``s`` with ``dps`` decimal digits of working precision."""
    if dps < 20:
        raise ValueError("working precision must be at least 20 digits")
    with mpmath.workdps(dps + 5):
        sm = mpmath.mpmathify(s)
        val = g.prefactor.evaluate(sm)
        den = g.ratfun.den(sm)
        if den == 0:
            raise GammaPoleError(f"rational factor has a pole at {s}")
        val *= g.ratfun.num(sm) / den
        for (kind, a, b), m in g.factors:
            x = mpmath.mpf(a.numerator) / a.denominator * sm + mpmath.mpf(b.numerator) / b.denominator
            val *= _factor_value(kind, x) ** m
        return +val


def gamma_exact(q: Scalar) -> tuple[Fraction, Fraction]:
    """``Gamma(q) = r * pi^e`` for integral or half-integral ``q``.

    Returns ``(r, e)`` with ``e`` either 0 or 1/2.  Raises
    ``GammaPoleError`` at non-positive integers and ``ValueError`` when
    ``q`` is neither integral nor half-integral.
    """
    q = _frac(q)
    if q.denominator == 1:
        if q <= 0:
            raise GammaPoleError(f"Gamma pole at {q}")
        return Fraction(math.factorial(int(q) - 1)), Fraction(0)
    if q.denominator != 2:
        raise ValueError(f"Gamma({q}) is not reducible to pi powers")
    r = Fraction(1)
    x = Fraction(1, 2)
    while x < q:
        r *= x
        x += 1
    while x > q:
        x -= 1
        r /= x
    return r, Fraction(1, 2)


def gamma_product(kinds_args: Iterable[tuple[str, Scalar, Scalar, int]]) -> GammaExpression:
    """Convenience builder from ``(kind, a, b, mult)`` tuples."""
    return GammaExpression(factors=tuple(((k, a, b), m) for k, a, b, m in kinds_args))
