"""Critical points, archimedean factors for GSp(4) x GL(1) and the rational
normalization constants that multiply critical L-values.

Critical integers are those where neither the archimedean factor nor its
reflection ``s -> 1 - s`` has a pole.  ``critical_set_standard`` gives the
closed-form answer and ``pole_scan`` recomputes it from the Gamma poles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import GammaExpression, ScaledConstant
from .archimedean.closed_form import a_k_value, arch_std_gamma, validate_weight
from .symplectic import siegel_volume, vol_principal_congruence

PARITIES = ("matching", "even", "odd")


@dataclass(frozen=True)
class CriticalData:
    right_points: tuple[int, ...]
    left_points: tuple[int, ...]
    excluded: tuple[tuple[int, str], ...] = field(default=())

    def __post_init__(self):
        if set(self.right_points) & set(self.left_points):
            raise ValueError("right and left critical points overlap")

    @property
    def points(self) -> tuple[int, ...]:
        return tuple(sorted(self.left_points + self.right_points))


def _eps_for(ell: int, chi_parity: str) -> int:
    if chi_parity not in PARITIES:
        raise ValueError(f"chi_parity must be one of {PARITIES}")
    if chi_parity == "matching":
        return ell % 2
    return 0 if chi_parity == "even" else 1


def arch_lfactor_gsp4(ell: int, m: int, eps: int | None = None) -> GammaExpression:
    """``Gamma_R(s+eps) Gamma_C(s+ell+m-1) Gamma_C(s+ell-2)``; ``eps`` defaults
    to ``ell mod 2`` (the character parity matches ``ell``)."""
    if ell < 3:
        raise ValueError("ell must be at least 3")
    if m < 0 or m % 2:
        raise ValueError("m must be even and non-negative")
    eps = ell % 2 if eps is None else eps
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    return (GammaExpression.factor("R", 1, eps) * GammaExpression.factor("C", 1, ell + m - 1)
            * GammaExpression.factor("C", 1, ell - 2))


def _has_pole(g: GammaExpression, r: int, reflect: bool) -> bool:
    for (kind, a, b), mult in g.factors:
        if mult <= 0:
            continue
        x = a * (1 - r if reflect else r) + b
        if x.denominator != 1 or x > 0:
            continue
        if kind != "R" or x % 2 == 0:
            return True
    return False


def pole_scan(g: GammaExpression, window: int) -> list[int]:
    """Integers ``|r| <= window`` where neither ``g(s)`` nor ``g(1-s)`` has a pole."""
    return [r for r in range(-window, window + 1)
            if not _has_pole(g, r, False) and not _has_pole(g, r, True)]


def critical_set_standard(ell: int, chi_parity: str = "matching", *,
                          chi_squared_trivial: bool = False) -> CriticalData:
    """Critical points of the degree-5 L-function twisted by ``chi``.

    ``matching`` means ``chi(-1) = (-1)^ell``: right ``1..ell-2`` with
    ``r = ell mod 2`` and left ``-ell+3..0`` with ``r = ell+1 mod 2``.
    ``even`` means ``chi(-1) = 1``: right evens in ``2..ell-2`` and left odds
    in ``-ell+3..0`` (the point ``2-ell`` is a pole of ``Gamma_C(s+ell-2)``).
    When ``chi^2 = 1`` the point ``r = 1`` is reported under ``excluded``.
    """
    if ell < 3:
        raise ValueError("ell must be at least 3")
    eps = _eps_for(ell, chi_parity)
    if eps == ell % 2:
        right = [r for r in range(1, ell - 1) if r % 2 == ell % 2]
        left = [r for r in range(3 - ell, 1) if r % 2 != ell % 2]
    elif eps == 0:
        right = [r for r in range(2, ell - 1) if r % 2 == 0]
        left = [r for r in range(3 - ell, 1) if r % 2]
    else:
        # odd character, even ell
        right = [r for r in range(1, ell - 2) if r % 2]
        left = [r for r in range(3 - ell, 1) if r % 2 == 0]
    excluded = []
    if chi_squared_trivial and 1 in right:
        right.remove(1)
        excluded.append((1, "r = 1 requires chi^2 nontrivial"))
    return CriticalData(tuple(right), tuple(left), tuple(excluded))


def critical_set_sym4(k: int, chi_parity: str = "odd") -> CriticalData:
    """Critical points of ``L(s, chi x sym^4 f)`` for ``f`` of even weight ``k``."""
    _check_even_k(k)
    if chi_parity not in ("odd", "even"):
        raise ValueError("chi_parity must be 'odd' or 'even'")
    return critical_set_standard(k + 1, "matching" if chi_parity == "odd" else "even")


def _check_even_k(k: int) -> None:
    if k < 2 or k % 2:
        raise ValueError(f"k must be even and at least 2, got {k}")


def sym4_lift_params(k: int) -> tuple[tuple[int, int], int, int]:
    """``((2k-1, k+1), ell, m)`` with ``ell = k+1`` and ``m = k-2``."""
    _check_even_k(k)
    return (2 * k - 1, k + 1), k + 1, k - 2


def check_critical_r(n: int, k: Sequence[int], r: int) -> None:
    kk = validate_weight(k)
    if len(kk) != n:
        raise ValueError(f"weight {kk} has wrong length for n={n}")
    top = kk[-1] - n
    if not 1 <= r <= top:
        raise ValueError(f"r={r} outside the critical range 1..{top}")
    if (r - top) % 2:
        raise ValueError(f"r={r} has the wrong parity (need r = {top} mod 2)")


def normalization_constant(n: int, k: Sequence[int], r: int,
                           N_factored: Sequence[tuple[int, int]] = ()) -> ScaledConstant:
    """``pi^(n(n+1)/2) prod_p vol(Gamma(p^m_p)) / vol(Sp(2n,Z)\\Sp(2n,R)) * A_k(r-1)``.

    The powers of pi cancel, so the result is rational.
    """
    check_critical_r(n, k, r)
    vol = ScaledConstant(vol_principal_congruence(n, N_factored), pi_exp=n * (n + 1) // 2)
    out = vol / siegel_volume(n) * ScaledConstant(a_k_value(tuple(k), r - 1, strict=True))
    if not out.is_rational():
        raise ArithmeticError(f"normalization constant not rational: {out}")
    return out


def cn_prefactor(k: int, r: int, N_factored: Sequence[tuple[int, int]] = (), m: int = 0,
                 *, chi_squared_trivial: bool = False) -> ScaledConstant:
    """``(-1)^k pi^(2r+4-2k) c`` for ``n = 2`` and weight ``(k, k-m)``.

    ``c`` is ``normalization_constant(2, (k, k-m), r, N)``.  The point
    ``r = 1`` is refused when ``chi^2`` is trivial.
    """
    if m < 0 or m % 2:
        raise ValueError("m must be even and non-negative")
    if r == 1 and chi_squared_trivial:
        raise ValueError("r = 1 needs chi^2 nontrivial")
    c = normalization_constant(2, (k, k - m), r, N_factored)
    return ScaledConstant((-1) ** k, pi_exp=2 * r + 4 - 2 * k) * c


def gsp4_consistency(ell: int, m: int, eps: int | None = None) -> bool:
    """The GSp(4) factor agrees with the general standard-factor formula."""
    eps = ell % 2 if eps is None else eps
    return arch_lfactor_gsp4(ell, m, eps).factors == arch_std_gamma(2, (ell + m, ell), eps).factors


__all__ = ["CriticalData", "PARITIES", "arch_lfactor_gsp4", "check_critical_r",
           "cn_prefactor", "critical_set_standard", "critical_set_sym4", "gsp4_consistency",
           "normalization_constant", "pole_scan", "sym4_lift_params"]
