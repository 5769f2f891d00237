import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympullback.characters import (CyclotomicNumber, characters_mod, cyclotomic_poly, factorize,
                                    gauss_sum, primitive_characters)


def _phi(n):
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def _mu(n):
    out = 1
    for p, e in factorize(n):
        if e > 1:
            return 0
        out = -out
    return out


def primitive_count(N):
    # number of primitive characters mod N is (mu * phi)(N)
    return sum(_mu(d) * _phi(N // d) for d in range(1, N + 1) if N % d == 0)


def test_factorize():
    assert factorize(360) == [(2, 3), (3, 2), (5, 1)]
    assert factorize(1) == []


@pytest.mark.parametrize("L", [1, 2, 3, 4, 6, 8, 12, 15, 30, 105])
def test_cyclotomic_degree_and_roots(L):
    p = cyclotomic_poly(L)
    assert p.degree == _phi(L)
    z = cmath.exp(2j * cmath.pi / L)
    assert abs(sum(complex(c) * z ** i for i, c in enumerate(p.coeffs))) < 1e-9


@pytest.mark.parametrize("N", range(1, 31))
def test_character_counts(N):
    chars = list(characters_mod(N))
    assert len(chars) == _phi(N)
    assert len({c.exponents for c in chars}) == len(chars)
    assert len(primitive_characters(N)) == primitive_count(N)


def test_character_values_are_multiplicative():
    for chi in characters_mod(21):
        for a in range(1, 21):
            for b in range(1, 21):
                assert chi(a * b) == chi(a) * chi(b)


small = st.lists(st.integers(-5, 5), min_size=1, max_size=12)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([3, 4, 5, 8, 9, 12]), small, small, st.sampled_from([3, 4, 5, 8, 9, 12]))
def test_field_arithmetic_matches_complex(L1, a, b, L2):
    x, y = CyclotomicNumber(L1, a), CyclotomicNumber(L2, b)
    for got, want in [(x + y, x.to_complex() + y.to_complex()),
                      (x - y, x.to_complex() - y.to_complex()),
                      (x * y, x.to_complex() * y.to_complex()),
                      (x.conj(), x.to_complex().conjugate())]:
        assert abs(got.to_complex() - want) < 1e-8 * max(1, abs(want))


def test_cyclotomic_equality_uses_reduction():
    # 1 + z + z^2 = 0 for a primitive cube root of unity
    assert CyclotomicNumber(3, [1, 1, 1]).is_zero()
    assert CyclotomicNumber(6, [0, 0, 1]) == CyclotomicNumber(3, [0, 1])
    assert CyclotomicNumber(4, [Fraction(1, 2)]) == CyclotomicNumber.rational(Fraction(1, 2))


@pytest.mark.parametrize("N", range(1, 51))
def test_gauss_sum_norm(N):
    for chi in primitive_characters(N):
        g = gauss_sum(chi)
        assert g * g.conj() == CyclotomicNumber.rational(N)
        sign = 1 if chi.parity() == 0 else -1
        assert g * gauss_sum(chi.conjugate()) == CyclotomicNumber.rational(sign * N)


def test_gauss_sum_mod_4():
    (chi,) = primitive_characters(4)
    g = gauss_sum(chi)
    assert g == CyclotomicNumber.root_of_unity(4, 1) * 2
    assert abs(g.to_complex() - 2j) < 1e-14


def test_gauss_sum_trivial_and_quadratic():
    (one,) = primitive_characters(1)
    assert gauss_sum(one) == CyclotomicNumber.rational(1)
    (chi,) = [c for c in primitive_characters(5) if c.order == 2]
    assert abs(gauss_sum(chi).to_complex() - math.sqrt(5)) < 1e-12


def test_gauss_sum_requires_primitive():
    chi = next(c for c in characters_mod(9) if not c.is_primitive() and c.order > 1)
    with pytest.raises(ValueError):
        gauss_sum(chi)


def test_product_rule():
    conds = [N for N in range(3, 16) if primitive_characters(N)]
    checked = 0
    for N1 in conds:
        for N2 in conds:
            if N1 >= N2 or math.gcd(N1, N2) != 1 or N1 * N2 > 60:
                continue
            for c1 in primitive_characters(N1):
                for c2 in primitive_characters(N2):
                    prod = c1 * c2
                    assert prod.is_primitive() and prod.modulus == N1 * N2
                    lhs = gauss_sum(prod)
                    rhs = c1(N2) * c2(N1) * gauss_sum(c1) * gauss_sum(c2)
                    assert lhs == rhs
                    checked += 1
    assert checked > 50


def test_conjugate_character():
    for chi in characters_mod(13):
        for a in range(1, 13):
            assert chi.conjugate()(a) == chi(a).conj()
