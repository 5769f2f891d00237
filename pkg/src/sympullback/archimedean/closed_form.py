"""Exact archimedean formulas: the multivariable integral gamma_n, beta-ratios,
the normalized zeta integral A_k and B_lambda, Gamma factors and the Haar
constants."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from ..algebra import (ExpRational, GammaExpression, GammaPoleError, Polynomial,
                       RationalFunction, ScaledConstant, gamma_exact, gamma_simplify)
from ..algebra.polynomial import Scalar, _frac
from ..algebra.ratfun import product


class InvalidWeight(ValueError):
    """Highest weight that is not dominant, not of uniform parity, or too small."""


class CriticalRangeWarning(UserWarning):
    """Evaluation point lies outside the critical strip of integers."""


class DivergentParameter(ValueError):
    """Parameters outside the region of absolute convergence."""


@dataclass(frozen=True)
class HighestWeight:
    """Weight ``k_1 >= ... >= k_n > n`` of a holomorphic discrete series
    K-type, all entries of one parity."""

    k: tuple[int, ...]

    def __post_init__(self):
        k = tuple(int(x) for x in self.k)
        object.__setattr__(self, "k", k)
        validate_weight(k)

    @property
    def n(self) -> int:
        return len(self.k)

    @property
    def is_scalar(self) -> bool:
        return len(set(self.k)) == 1

    def lam(self) -> tuple[int, ...]:
        """Harish-Chandra style parameter ``l_j = k_j - j``."""
        return tuple(kj - j for j, kj in enumerate(self.k, start=1))


def validate_weight(k: Sequence[int]) -> tuple[int, ...]:
    k = tuple(int(x) for x in k)
    n = len(k)
    if n < 1:
        raise InvalidWeight("weight must have at least one entry")
    if any(k[i] < k[i + 1] for i in range(n - 1)):
        raise InvalidWeight(f"weight {k} is not dominant")
    if len({x % 2 for x in k}) != 1:
        raise InvalidWeight(f"entries of {k} do not share one parity")
    if k[-1] <= n:
        raise InvalidWeight(f"need k_n > n, got {k}")
    return k


def _w(k) -> tuple[int, ...]:
    return k.k if isinstance(k, HighestWeight) else validate_weight(k)


def _lin(a, b) -> RationalFunction:
    return RationalFunction(Polynomial.linear(a, b))


def gamma_n_closed(n: int) -> RationalFunction:
    """``prod_{m<=n} (m-1)! prod_{j<=m} 1/(z - m - 1 + 2j)`` in the variable ``z``."""
    if n < 1:
        raise ValueError("n must be positive")
    out = RationalFunction.const(1)
    for m in range(1, n + 1):
        out = out * math.factorial(m - 1)
        for j in range(1, m + 1):
            out = out / _lin(1, -m - 1 + 2 * j)
    return out


def gamma_n_convergence_bound(n: int) -> int:
    """The integral defining gamma_n converges exactly for ``z > n - 1``."""
    return n - 1


def beta_ratio(n: int, l_j: int, k: int, j: int) -> RationalFunction:
    """``beta(l_j, s) / beta(k - j, s)`` as a rational function of ``s``, where
    ``beta(m, s) = B(t + m/2, t - m/2)`` and ``t = (n + 1/2) s + 1/4``."""
    kj = l_j + j
    if (k - kj) % 2 or k < kj:
        raise InvalidWeight("need k >= k_j with k - k_j even")
    m = (k - kj) // 2
    t = (Fraction(2 * n + 1, 2), Fraction(1, 4))
    out = RationalFunction.const(1)
    half = Fraction(l_j, 2)
    for i in range(m):
        out = out * _lin(t[0], t[1] - half - m + i) / _lin(t[0], t[1] + half + m - 1 - i)
    return out


def a_k(k) -> ExpRational:
    """The normalized archimedean integral ``A_k(z)``:

    ``2^(-n(z-1)) prod_j prod_{i<=j} 1/(z + k - 1 - j + 2i)
    * prod_j prod_{i<(k-k_j)/2} (z - (k-1-j-2i)) / (z + (k-1-j-2i))``
    with ``k = k_1``.
    """
    kk = _w(k)
    n, k1 = len(kk), kk[0]
    rf = RationalFunction.const(1)
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            rf = rf / _lin(1, k1 - 1 - j + 2 * i)
        for i in range((k1 - kk[j - 1]) // 2):
            c = k1 - 1 - j - 2 * i
            rf = rf * _lin(1, -c) / _lin(1, c)
    return ExpRational(ScaledConstant.power_of_two(-n, n), rf)


def a_k_value(k, t: int, strict: bool = False) -> Fraction:
    """``A_k(t)`` at an integer; warns (or raises when ``strict``) outside
    ``0 <= t <= k_n - n``."""
    import warnings

    kk = _w(k)
    n = len(kk)
    if not 0 <= t <= kk[-1] - n:
        msg = f"t={t} outside 0..{kk[-1] - n}"
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, CriticalRangeWarning, stacklevel=2)
    val = a_k(kk).at(t)
    if not val.is_rational():
        raise ArithmeticError("A_k at an integer should be rational")
    return val.rational


def _doubling_sub(n: int) -> tuple[Fraction, Fraction]:
    # z = (2n+1) s - 1/2
    return Fraction(2 * n + 1), Fraction(-1, 2)


def b_lambda_scalar(n: int, k: int) -> ExpRational:
    """``B(s)`` for scalar weight ``k``, directly from gamma_n:

    ``i^(nk) pi^(n(n+1)/2) / prod (m-1)! * 2^(-n(2n+1)s + 3n/2) * gamma_n((2n+1)s - 1/2 + k)``.
    """
    validate_weight((k,) * n)
    fact = math.prod(math.factorial(m - 1) for m in range(1, n + 1))
    a, b = _doubling_sub(n)
    g = gamma_n_closed(n).subs_linear(a, b + k)
    c = ScaledConstant(Fraction(1, fact), pi_exp=n * (n + 1) // 2, i_pow=n * k,
                       two_exp=(-n * (2 * n + 1), Fraction(3 * n, 2)))
    return ExpRational(c, g)


def b_lambda(n: int, k) -> ExpRational:
    """``B_lambda(s)`` for a general weight via beta-ratio corrections of the
    scalar-weight formula at ``k = k_1``.  An integer ``k`` means the
    scalar weight ``(k, ..., k)``."""
    kk = _w((k,) * n if isinstance(k, int) else k)
    if len(kk) != n:
        raise InvalidWeight(f"weight {kk} has wrong length for n={n}")
    out = b_lambda_scalar(n, kk[0])
    for j in range(1, n + 1):
        out = out * beta_ratio(n, kk[j - 1] - j, kk[0], j)
    return out


def b_lambda_via_a_k(n: int, k) -> ExpRational:
    """``i^(nk) pi^(n(n+1)/2) A_k((2n+1)s - 1/2)``."""
    kk = _w((k,) * n if isinstance(k, int) else k)
    a, b = _doubling_sub(n)
    return a_k(kk).subs_linear(a, b) * ScaledConstant(1, pi_exp=n * (n + 1) // 2, i_pow=n * kk[0])


def b_lambda_at(n: int, k, s) -> complex:
    """Numeric value of ``B_lambda(s)``."""
    return complex(b_lambda(n, k).evaluate(s))


def arch_std_gamma(n: int, k, eps: int) -> GammaExpression:
    """``Gamma_R(s + eps0) prod_j Gamma_C(s + k_j - j)`` with ``eps0 = eps + n mod 2``."""
    kk = _w(k)
    if len(kk) != n:
        raise InvalidWeight("weight length must equal n")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    e0 = (eps + n) % 2
    g = GammaExpression.factor("R", 1, e0)
    for j, kj in enumerate(kk, start=1):
        g = g * GammaExpression.factor("C", 1, kj - j)
    return g


def _rescale(g: GammaExpression, a, b) -> GammaExpression:
    """Substitute ``s -> a s + b`` in every Gamma argument."""
    a, b = _frac(a), _frac(b)
    return GammaExpression(g.prefactor.subs_linear(a, b),
                           tuple(((kind, x * a, x * b + y), m) for (kind, x, y), m in g.factors),
                           g.ratfun.subs_linear(a, b))


def gamma_quotient_unsimplified(n: int, k, eps: int) -> GammaExpression:
    """``L_inf((2n+1)s + 1/2, std) / (L_inf((2n+1)(s+1/2), chi) prod_j L_inf((2n+1)(2s+1) - 2j, chi^2))``
    with ``L_inf(s, chi) = Gamma_R(s + eps)`` and ``chi^2`` trivial at infinity."""
    w = 2 * n + 1
    num = _rescale(arch_std_gamma(n, k, eps), w, Fraction(1, 2))
    den = GammaExpression.factor("R", w, Fraction(w, 2) + eps)
    for j in range(1, n + 1):
        den = den * GammaExpression.factor("R", 2 * w, w - 2 * j)
    return num / den


@dataclass(frozen=True)
class GammaQuotient:
    """The quotient equals ``kappa * 2^(-n z) * poly(z)`` with ``z = (2n+1)s - 1/2``."""

    n: int
    kappa: ScaledConstant
    poly: Polynomial
    simplified: GammaExpression

    def evaluate(self, s, dps: int = 30):
        with mpmath.workdps(dps):
            z = (2 * self.n + 1) * mpmath.mpmathify(s) - mpmath.mpf(1) / 2
            return self.kappa.evaluate() * mpmath.power(2, -self.n * z) * self.poly(z)


def gamma_quotient_closed(n: int, k, eps: int) -> GammaQuotient:
    """Simplify the Gamma quotient completely.

    Returns ``kappa`` and the polynomial ``P`` with quotient
    ``kappa * 2^(-nz) * P(z)``; here
    ``kappa = 2^(n(n+1)/2 + M) pi^(n^2 + M) (2 pi)^(-sum k_j)`` and
    ``P(z) = prod_j prod_{i<k_j-n} (z+1+n+i-j) / prod_{i<M} (z+1+eps0+2i)``
    with ``M = (n + eps - eps0)/2``.
    """
    kk = _w(k)
    g = gamma_simplify(gamma_quotient_unsimplified(n, kk, eps))
    if not g.is_gamma_free():
        raise ArithmeticError(f"Gamma factors did not cancel: {g}")
    if not g.ratfun.is_polynomial():
        raise ArithmeticError("quotient is not a polynomial in s")
    w = 2 * n + 1
    # rewrite in z = w s - 1/2, i.e. s = (z + 1/2)/w
    a, b = Fraction(1, w), Fraction(1, 2 * w)
    poly_s = g.ratfun.num.scale(1 / g.ratfun.den.lead)
    poly_z = poly_s.subs_linear(a, b)
    pref = g.prefactor.subs_linear(a, b)
    if pref.two_exp[0] != -n:
        raise ArithmeticError("unexpected variable power of two")
    lead = poly_z.lead
    kappa = ScaledConstant(pref.rational * lead, pref.pi_exp, pref.i_pow, (0, pref.two_exp[1]))
    return GammaQuotient(n, kappa, poly_z.monic(), g)


def gamma_quotient_expected_poly(n: int, k, eps: int) -> RationalFunction:
    """The product formula for ``P(z)`` written out factor by factor."""
    kk = _w(k)
    e0 = (eps + n) % 2
    M = (n + eps - e0) // 2
    rf = RationalFunction.const(1)
    for j, kj in enumerate(kk, start=1):
        for i in range(kj - n):
            rf = rf * _lin(1, 1 + n + i - j)
    for i in range(M):
        rf = rf / _lin(1, 1 + e0 + 2 * i)
    return rf


def gamma_quotient_kappa(n: int, k, eps: int, *, drop_two_power: bool = False) -> ScaledConstant:
    """``kappa`` in closed form.  ``drop_two_power=True`` omits the factor
    ``2^M``; that variant disagrees with the Gamma quotient whenever ``M > 0``."""
    kk = _w(k)
    e0 = (eps + n) % 2
    M = (n + eps - e0) // 2
    two = n * (n + 1) // 2 + (0 if drop_two_power else M)
    return ScaledConstant(Fraction(2) ** two, pi_exp=n * n + M) * ScaledConstant(2, pi_exp=1) ** (-sum(kk))


def hu_integral_closed(n: int, lam: Scalar, sigma: Scalar, tau: Scalar):
    """``int_{H_n} det(Y)^(lam-n-1) det(1+Y+iX)^-sigma det(1+Y-iX)^-tau dX dY``

    ``= 2^(-(sigma+tau)n + n(n+3)/2) pi^(n(n+1)/2)
       prod_m Gamma(lam-(n+m)/2) Gamma(sigma+tau-lam-(n-m)/2)
              / (Gamma(sigma-(n-m)/2) Gamma(tau-(n-m)/2))``

    Returned as a ``ScaledConstant`` when every Gamma argument is integral or
    half-integral and the square roots of pi pair up, else as an mpmath number.
    """
    lam, sigma, tau = _frac(lam), _frac(sigma), _frac(tau)
    num_args, den_args = [], []
    for m in range(1, n + 1):
        num_args += [lam - Fraction(n + m, 2), sigma + tau - lam - Fraction(n - m, 2)]
        den_args += [sigma - Fraction(n - m, 2), tau - Fraction(n - m, 2)]
    for x in num_args:
        if x.denominator == 1 and x <= 0:
            raise GammaPoleError(f"Gamma pole at {x}")
    if any(x <= 0 for x in num_args + den_args):
        raise DivergentParameter("integral diverges: a Gamma argument is not positive")
    two_b = -(sigma + tau) * n + Fraction(n * (n + 3), 2)
    base = ScaledConstant(1, pi_exp=n * (n + 1) // 2, two_exp=(0, two_b))
    try:
        r = Fraction(1)
        half_pi = Fraction(0)
        for x in num_args:
            v, e = gamma_exact(x)
            r, half_pi = r * v, half_pi + e
        for x in den_args:
            v, e = gamma_exact(x)
            r, half_pi = r / v, half_pi - e
        if half_pi.denominator == 1:
            return base * ScaledConstant(r, pi_exp=int(half_pi))
    except ValueError:
        pass
    val = base.evaluate()
    for x in num_args:
        val *= mpmath.gamma(mpmath.mpf(x.numerator) / x.denominator)
    for x in den_args:
        val /= mpmath.gamma(mpmath.mpf(x.numerator) / x.denominator)
    return val


def kak_constant(n: int) -> ScaledConstant:
    """Haar-measure constant ``alpha_n = (4 pi)^(n(n+1)/2) / prod_{m<=n} (m-1)!``."""
    if n < 1:
        raise ValueError("n must be positive")
    e = n * (n + 1) // 2
    fact = math.prod(math.factorial(m - 1) for m in range(1, n + 1))
    return ScaledConstant(Fraction(4 ** e, fact), pi_exp=e)


def haar_test_integral(n: int, k: int) -> ScaledConstant:
    """``int_G 2^(2nk) |det(A+D+i(C-B))|^(-2k) dg`` through the Siegel-domain
    integral with ``lam = sigma = tau = k``."""
    v = hu_integral_closed(n, k, k, k)
    if not isinstance(v, ScaledConstant):
        raise ArithmeticError("expected an exact value")
    return v * ScaledConstant(Fraction(2) ** (2 * n * k))


def kak_constant_derived(n: int, k: int) -> ScaledConstant:
    """Recover ``alpha_n`` by dividing the Siegel-domain evaluation of the
    test integral by its KAK-coordinate evaluation ``2^n gamma_n(2k - 1 - n)``."""
    g = gamma_n_closed(n)(Fraction(2 * k - 1 - n))
    return haar_test_integral(n, k) / ScaledConstant(Fraction(2) ** n * g)
