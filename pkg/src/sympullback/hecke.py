"""Unramified local factors: Euler factors, the rationality identity for the
local zeta integral, and the volume series of spherical double cosets."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, RationalFunction, TruncatedSeries, series_expand
from .algebra.polynomial import Scalar, _frac
from .algebra.ratfun import product


def _check_params(alphas: Sequence, q=None) -> list[Fraction]:
    out = [_frac(a) for a in alphas]
    if any(a == 0 for a in out):
        raise ValueError("Satake parameters must be non-zero")
    if q is not None and _frac(q) <= 1:
        raise ValueError("residue field size must exceed 1")
    return out


def standard_euler_factor(n: int, c: Scalar, alphas: Sequence[Scalar]) -> Polynomial:
    """``(1 - cT) prod_i (1 - c a_i T)(1 - c a_i^-1 T)``, a polynomial in ``T``
    of degree ``2n + 1``; its inverse is the local standard L-factor."""
    al = _check_params(alphas)
    if len(al) != n:
        raise ValueError(f"expected {n} Satake parameters, got {len(al)}")
    c = _frac(c)
    if c == 0:
        raise ValueError("character value must be non-zero")
    p = Polynomial([1, -c])
    for a in al:
        p = p * Polynomial([1, -c * a]) * Polynomial([1, -c / a])
    return p


def rationality_rhs(n: int, q: Scalar, X: Sequence[Scalar]) -> RationalFunction:
    """The rational function of ``Y`` equal to the local unramified zeta integral:

    ``(1-Y)/(1-q^n Y) * prod_i (1 - q^(2i) Y^2) / ((1 - X_i q^n Y)(1 - X_i^-1 q^n Y))``.
    """
    q = _frac(q)
    Xs = _check_params(X, q)
    if len(Xs) != n:
        raise ValueError(f"expected {n} parameters, got {len(Xs)}")
    qn = q ** n
    num = Polynomial([1, -1])
    den = Polynomial([1, -qn])
    for i, x in enumerate(Xs, start=1):
        num = num * Polynomial([1, 0, -q ** (2 * i)])
        den = den * Polynomial([1, -x * qn]) * Polynomial([1, -qn / x])
    return RationalFunction(num, den)


def spherical_rationality_factor(n: int, q: Scalar, c: Scalar, alphas: Sequence[Scalar]) -> RationalFunction:
    """The ratio ``L(std) / (L(chi) prod_i L(chi^2))`` at the doubling point,
    as a rational function of ``U = q^-(2n+1)(s+1/2)``.

    Built by substituting into the Euler polynomials: the standard factor
    sees ``T = q^n U``, the ``chi`` factor ``T = U`` and the ``i``-th
    ``chi^2`` factor ``T = q^(2i) U^2``.
    """
    q, c = _frac(q), _frac(c)
    al = _check_params(alphas, q)
    std = standard_euler_factor(n, c, al)
    chi = Polynomial([1, -c])
    num = chi.compose(Polynomial([0, 1]))
    for i in range(1, n + 1):
        chi2 = Polynomial([1, -c * c])
        num = num * chi2.compose(Polynomial([0, 0, q ** (2 * i)]))
    den = std.compose(Polynomial([0, q ** n]))
    return RationalFunction(num, den)


def verify_spherical_rationality(n: int, q: Scalar, c: Scalar, alphas: Sequence[Scalar]) -> bool:
    """Check ``spherical_rationality_factor(U) == rationality_rhs(Y = c U)`` exactly."""
    lhs = spherical_rationality_factor(n, q, c, alphas)
    rhs = rationality_rhs(n, q, alphas).subs_linear(_frac(c), 0)
    return lhs == rhs


def volume_series_closed_form(n: int, q: Scalar) -> RationalFunction:
    """``prod_i (1 + q^i Y) / (1 - q^(n+i) Y)``: the rationality identity at
    ``X_i = q^i`` after cancellation."""
    q = _frac(q)
    if q <= 1:
        raise ValueError("residue field size must exceed 1")
    return product([RationalFunction(Polynomial([1, q ** i]), Polynomial([1, -q ** (n + i)]))
                    for i in range(1, n + 1)])


def volume_series_with_extra_prefactor(n: int, q: Scalar) -> RationalFunction:
    """The closed form multiplied by ``(1 - Y)/(1 - q^n Y)``.

    Kept so the difference from :func:`volume_series_closed_form` can be
    reported; this variant does not match the coefficientwise volumes.
    """
    q = _frac(q)
    return (volume_series_closed_form(n, q)
            * RationalFunction(Polynomial([1, -1]), Polynomial([1, -q ** n])))


def volume_series(n: int, q: Scalar, order: int) -> TruncatedSeries:
    """``sum_e vol(K diag(p^e 1_n, p^-e 1_n) K) Y^e`` through ``Y^order``,
    obtained by expanding the rationality identity at ``X_i = q^i``."""
    q = _frac(q)
    if n < 1 or order < 0:
        raise ValueError("need n >= 1 and order >= 0")
    f = rationality_rhs(n, q, [q ** i for i in range(1, n + 1)])
    return series_expand(f, order)


def volume_series_discrepancy(n: int, q: Scalar, order: int) -> dict:
    """Compare the expansion of the identity at ``X_i = q^i`` with both closed forms."""
    series = volume_series(n, q, order)
    closed = series_expand(volume_series_closed_form(n, q), order)
    extra = series_expand(volume_series_with_extra_prefactor(n, q), order)
    first_diff = next((i for i in range(order + 1) if series[i] != extra[i]), None)
    return {
        "series": series,
        "closed_form": closed,
        "with_extra_prefactor": extra,
        "closed_form_matches": series == closed,
        "extra_prefactor_matches": series == extra,
        "first_differing_index": first_diff,
    }
