import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympullback.algebra import ScaledConstant
from sympullback.symplectic import (J, NotSimilitude, GSpMatrix, check_levi_conjugation,
                                    congruence_forward_check, coset_representative,
                                    d_and_delta, det, embed_pair, eye, inv, levi_unipotent_element,
                                    multiplier, random_gl, random_gsp, random_sp, random_symmetric,
                                    siegel_volume, sp_group_order, vol_principal_congruence, zeros)

from oracles import siegel_fundamental_domain_area, sp_order_brute


@pytest.mark.parametrize("n,p,m", [(1, 2, 1), (1, 3, 1), (1, 2, 2), (2, 2, 1)])
def test_group_order_matches_enumeration(n, p, m):
    assert sp_group_order(n, p, m) == sp_order_brute(n, p, m)


def test_group_order_known_values():
    assert sp_group_order(1, 5, 1) == 120
    assert sp_group_order(2, 3, 1) == 51840
    with pytest.raises(ValueError):
        sp_group_order(0, 2, 1)


def test_siegel_volumes():
    assert siegel_volume(1) == ScaledConstant(Fraction(1, 3), pi_exp=1)
    assert siegel_volume(2) == ScaledConstant(Fraction(1, 270), pi_exp=3)
    assert float(siegel_volume(1).evaluate()) == pytest.approx(siegel_fundamental_domain_area(), rel=1e-8)


def test_principal_congruence_volume():
    assert vol_principal_congruence(1, [(2, 1), (3, 1)]) == Fraction(1, 6 * 24)
    assert vol_principal_congruence(2, []) == 1
    with pytest.raises(ValueError):
        vol_principal_congruence(1, [(2, 1), (2, 2)])


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_random_sp_is_symplectic(n, seed):
    g = random_sp(n, random.Random(seed))
    assert np.all(g.T.dot(J(n)).dot(g) == J(n))
    assert multiplier(g) == 1
    assert np.all(g.dot(inv(g)) == eye(2 * n))


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.integers(0, 10 ** 6))
def test_embed_pair_keeps_multiplier(a, b, seed):
    rng = random.Random(seed)
    mu = Fraction(rng.randint(1, 5), rng.randint(1, 5))
    g = embed_pair(random_gsp(a, rng, mu=mu), random_gsp(b, rng, mu=mu))
    assert g.shape == (2 * (a + b),) * 2
    assert multiplier(g) == mu


def test_embed_pair_rejects_unequal_multipliers():
    rng = random.Random(0)
    with pytest.raises(NotSimilitude):
        embed_pair(random_gsp(1, rng, mu=Fraction(2)), random_gsp(1, rng, mu=Fraction(3)))


def test_gsp_matrix_wrapper():
    g = GSpMatrix.of(random_gsp(2, random.Random(3), mu=Fraction(5)))
    assert g.mu == 5 and g.n == 2
    assert (g @ g).mu == 25
    assert g.inverse().mu == Fraction(1, 5)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_coset_representative_is_symplectic(n):
    for r in range(n + 1):
        q = coset_representative(n, r)
        assert multiplier(q) == 1
    assert np.all(coset_representative(n, 0) == eye(4 * n))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_levi_conjugation_cases(n):
    rng = random.Random(n)
    for r in range(n):
        k = n - r
        g1, g2 = random_gl(k, rng), random_gl(k, rng)
        U = np.array([[Fraction(rng.randint(-3, 3)) for _ in range(r)] for _ in range(k)],
                     dtype=object).reshape(k, r)
        S = random_symmetric(n, rng)
        S[k:, k:] = 0
        ok, d = check_levi_conjugation("i", n, r, p1=levi_unipotent_element(n, r, g1, U, S),
                                       p2=levi_unipotent_element(n, r, g2))
        assert ok and d == det(g1) * det(g2)
    for r in range(1, n + 1):
        assert check_levi_conjugation("ii", n, r, x1=random_sp(r, rng)) == (True, 1)
    assert check_levi_conjugation("iii", n, g=random_sp(n, rng)) == (True, 1)


def test_levi_conjugation_detects_generic_pair():
    rng = random.Random(11)
    ok, _ = check_levi_conjugation("i", 2, 0, p1=random_sp(2, rng), p2=random_sp(2, rng))
    assert not ok


def test_parabolic_characters():
    rng = random.Random(5)
    A = random_gl(2, rng)
    mu = Fraction(3, 2)
    p = np.block([[A, zeros(2, 2)], [zeros(2, 2), mu * inv(A.T)]])
    pd = d_and_delta(p, "P2n")
    assert pd.multiplier == mu
    assert pd.d == det(A) ** 3 / mu ** 3
    with pytest.raises(ValueError):
        d_and_delta(J(2))


def _unipotent(n, S):
    return np.block([[eye(n), S], [zeros(n, n), eye(n)]])


@pytest.mark.parametrize("n,p,m", [(1, 2, 1), (1, 3, 2), (2, 2, 2), (2, 5, 1)])
def test_congruence_forward(n, p, m):
    rng = random.Random(p * 10 + m)
    pm = p ** m
    for _ in range(5):
        h = _unipotent(n, pm * random_symmetric(n, rng, integral=True))
        h = h.dot(_unipotent(n, pm * random_symmetric(n, rng, integral=True)).T)
        q = _unipotent(2 * n, pm * random_symmetric(2 * n, rng, integral=True))
        assert congruence_forward_check(n, p, m, h, q)


def test_congruence_rejects_non_integral():
    with pytest.raises(ValueError):
        congruence_forward_check(1, 2, 1, eye(2) / 2, eye(4))


def test_oracle_matches_sl2_order():
    # |SL(2, F_p)| = p(p^2 - 1)
    for p in (2, 3):
        assert sp_order_brute(1, p, 1) == p * (p * p - 1)
