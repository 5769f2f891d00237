import math
from fractions import Fraction
from itertools import combinations_with_replacement

import mpmath
import numpy as np
import pytest

from sympullback.algebra import ScaledConstant, gamma_eval
from sympullback.archimedean import (CHECK_NAMES, DivergentParameter, InvalidWeight, a_k, a_k_value,
                                     b_lambda, b_lambda_at, b_lambda_scalar, b_lambda_via_a_k,
                                     gamma_n_closed, gamma_n_convergence_bound, gamma_quotient_closed,
                                     gamma_quotient_expected_poly, gamma_quotient_kappa,
                                     gamma_quotient_unsimplified, haar_test_integral, hu_integral_closed,
                                     kak_constant, kak_constant_derived, structure_checks,
                                     validate_weight)
from sympullback.archimedean.numeric import (QuadratureSpec, gamma_n_quadrature,
                                             haar_test_integral_numeric, hu_integral_quadrature_n1,
                                             iwasawa_test_integral_numeric, zeta_integral_mc)
from sympullback.archimedean.structure import (finite_difference_jacobian, jacobian_formula, v_of_z,
                                               z_of_v)


def weights(n, kmax):
    """Every weight accepted by ``validate_weight`` with ``k_1 <= kmax``."""
    out = []
    for k in combinations_with_replacement(range(kmax, 0, -1), n):
        try:
            out.append(validate_weight(k))
        except InvalidWeight:
            pass
    return out


@pytest.mark.parametrize("n,z", [(1, 2.0), (1, 3.5), (1, 7.0), (2, 4.0), (2, 2.5), (2, 9.0)])
def test_gamma_n_quadrature(n, z):
    exact = float(gamma_n_closed(n)(Fraction(z).limit_denominator(10)))
    res = gamma_n_quadrature(n, z)
    assert res.value == pytest.approx(exact, rel=1e-8)
    assert res.error_estimate < 1e-6 * exact


def test_gamma_n_closed_values():
    assert gamma_n_closed(1)(4) == Fraction(1, 4)
    assert gamma_n_closed(2)(4) == Fraction(1, 60)


@pytest.mark.parametrize("n", [1, 2])
def test_gamma_n_divergence(n):
    edge = gamma_n_convergence_bound(n)
    with pytest.raises(DivergentParameter):
        gamma_n_quadrature(n, edge)
    gamma_n_quadrature(n, edge + 0.5)


def test_quadrature_backends_agree():
    a = gamma_n_quadrature(2, 4.0, backend="numpy").value
    b = gamma_n_quadrature(2, 4.0, backend="numba").value
    assert a == pytest.approx(b, rel=1e-14)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_scalar_triangle(n):
    for k in range(n + 1, 11):
        direct = b_lambda_scalar(n, k)
        assert b_lambda(n, k) == direct
        assert b_lambda_via_a_k(n, k) == direct


@pytest.mark.parametrize("k", [(6, 4), (8, 4), (8, 6), (7, 5), (10, 4)])
def test_nonscalar_routes_agree(k):
    assert b_lambda(2, k) == b_lambda_via_a_k(2, k)


def test_weight_validation():
    assert validate_weight([4, 4]) == (4, 4)
    for bad in ([4, 6], [5, 4], [2, 2], []):
        with pytest.raises(InvalidWeight):
            validate_weight(bad)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_a_k_nonvanishing_in_critical_strip(n):
    ks = weights(n, 9)
    assert ks
    for k in ks:
        for t in range(0, k[-1] - n + 1):
            assert a_k_value(k, t) != 0


def test_a_k_strict_range():
    with pytest.raises(ValueError):
        a_k_value((4, 4), 3, strict=True)
    # 2^(1-z) / (z + 4) at z = 0
    assert a_k((4,)).at(0) == ScaledConstant(Fraction(1, 2))


@pytest.mark.parametrize("n,k,eps", [(1, (4,), 0), (1, (5,), 1), (2, (6, 4), 0), (2, (5, 5), 1),
                                     (3, (6, 6, 4), 1), (3, (7, 5, 5), 0)])
def test_gamma_quotient(n, k, eps):
    gq = gamma_quotient_closed(n, k, eps)
    assert gq.simplified.is_gamma_free()
    assert gq.kappa == gamma_quotient_kappa(n, k, eps)
    assert gq.poly == gamma_quotient_expected_poly(n, k, eps).num
    s = mpmath.mpf("2.3")
    with mpmath.workdps(40):
        direct = gamma_eval(gamma_quotient_unsimplified(n, k, eps), s, dps=40)
        assert abs(gq.evaluate(s, dps=40) / direct - 1) < 1e-25


def test_kappa_without_two_power_differs_when_needed():
    # M = (n + eps - eps0)/2 vanishes for n = 1, eps = 0 and is 1 for n = 2, eps = 0
    assert gamma_quotient_kappa(1, (4,), 0, drop_two_power=True) == gamma_quotient_kappa(1, (4,), 0)
    assert (gamma_quotient_kappa(2, (6, 4), 0) / gamma_quotient_kappa(2, (6, 4), 0, drop_two_power=True)
            == ScaledConstant(2))


def test_haar_constants():
    assert haar_test_integral(1, 2) == ScaledConstant(4, pi_exp=1)
    assert haar_test_integral(1, 3) == ScaledConstant(2, pi_exp=1)
    for k in (2, 3, 4):
        assert kak_constant_derived(1, k) == kak_constant(1) == ScaledConstant(4, pi_exp=1)
    assert kak_constant(2) == ScaledConstant(64, pi_exp=3)
    for n in (2, 3):
        assert kak_constant_derived(n, n + 2) == kak_constant(n)


@pytest.mark.parametrize("k", [2, 3])
def test_haar_numeric(k):
    exact = float(haar_test_integral(1, k).evaluate())
    assert haar_test_integral_numeric(k).value == pytest.approx(exact, rel=1e-8)
    # the Iwasawa coordinates carry the factor 2^n
    assert exact / iwasawa_test_integral_numeric(k).value == pytest.approx(2.0, rel=1e-8)


@pytest.mark.parametrize("lam,sigma,tau", [(2, 2, 2), (3, 4, 2), (Fraction(5, 2), 3, 3)])
def test_hu_integral_n1(lam, sigma, tau):
    closed = hu_integral_closed(1, lam, sigma, tau)
    closed = float(closed.evaluate()) if isinstance(closed, ScaledConstant) else float(closed)
    num = hu_integral_quadrature_n1(float(lam), float(sigma), float(tau))
    assert num.value == pytest.approx(closed, rel=1e-8)


def test_hu_integral_divergence():
    with pytest.raises(DivergentParameter):
        hu_integral_closed(1, Fraction(1, 2), 1, 1)


def test_mc_matches_closed_form():
    est = zeta_integral_mc(1, 4, 0.5, samples=200_000, seed=1)
    target = math.pi / 5
    assert abs(est.value - target) < 5 * est.stderr
    assert abs(b_lambda_at(1, 4, 0.5) - target) < 1e-12


def test_mc_is_seed_deterministic():
    a = zeta_integral_mc(2, 6, 1.0, samples=50_000, seed=7)
    b = zeta_integral_mc(2, 6, 1.0, samples=50_000, seed=7)
    c = zeta_integral_mc(2, 6, 1.0, samples=50_000, seed=8)
    assert a.value == b.value and a.stderr == b.stderr
    assert a.value != c.value


def test_mc_backends_agree():
    a = zeta_integral_mc(2, 6, 1.0, samples=100_000, seed=3, backend="numpy")
    b = zeta_integral_mc(2, 6, 1.0, samples=100_000, seed=3, backend="numba")
    assert a.value == pytest.approx(b.value, rel=1e-12)
    assert abs(a.value - b_lambda_at(2, 6, 1.0)) < 5 * a.stderr


def test_mc_divergent_parameter():
    with pytest.raises(DivergentParameter):
        zeta_integral_mc(2, 3, -1.0, samples=10)
    with pytest.raises(ValueError):
        zeta_integral_mc(1, 4, 0.5, samples=0)


SUPPORTED = {"iwasawa-measure": (1,), "kak-haar": (1,), "cone-measure": (1, 2)}


@pytest.mark.parametrize("name", CHECK_NAMES)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_structure_checks(name, n):
    if n not in SUPPORTED.get(name, (1, 2, 3)):
        with pytest.raises(ValueError):
            structure_checks(name, n=n)
        return
    rep = structure_checks(name, n=n, points=6, seed=n)
    assert rep.passed, rep
    assert rep.max_residual <= rep.tolerance


def test_structure_check_unknown_name():
    with pytest.raises(ValueError):
        structure_checks("nope")


def test_jacobian_formula_against_finite_differences():
    rng = np.random.default_rng(0)
    for n in (2, 3, 4):
        theta = rng.uniform(0.1, 1.4, size=n)
        Z = np.triu(rng.normal(scale=0.5, size=(n, n)), 1)
        fd = finite_difference_jacobian(lambda W: v_of_z(W, theta), Z)
        assert abs(fd) == pytest.approx(jacobian_formula(theta), rel=1e-5)
        assert np.allclose(z_of_v(v_of_z(Z, theta), theta), Z)


def test_quadrature_spec_controls_accuracy():
    coarse = gamma_n_quadrature(1, 3.0, QuadratureSpec(order=4, min_panels=2)).value
    assert abs(coarse - 1 / 3) > abs(gamma_n_quadrature(1, 3.0).value - 1 / 3)
