import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympullback.algebra import (ExpRational, Polynomial, RationalFunction, ScaledConstant,
                                 TruncatedSeries, gamma_product)
from sympullback.archimedean import a_k, gamma_quotient_unsimplified
from sympullback.characters import CyclotomicNumber, gauss_sum, primitive_characters
from sympullback.critical import critical_set_standard
from sympullback.serialize import (KINDS, deserialize, float_str, parse_rational, rational_str,
                                   serialize, to_jsonable)

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=30)
polys = st.lists(fracs, max_size=5).map(Polynomial)
nonzero_polys = polys.filter(lambda p: not p.is_zero())
ratfuns = st.builds(RationalFunction, polys, nonzero_polys)
consts = st.builds(ScaledConstant, fracs.filter(bool), st.integers(-5, 5), st.integers(0, 3),
                   st.tuples(fracs, fracs))


def roundtrip(v, kind):
    return deserialize(serialize(v), kind)


@given(fracs)
def test_rational(q):
    assert roundtrip(q, "rational") == q
    assert parse_rational(rational_str(q)) == q


def test_rational_text():
    assert rational_str(Fraction(4)) == "4"
    assert rational_str(Fraction(-3, 6)) == "-1/2"
    assert serialize(3) == "3"
    assert serialize(Fraction(3)) == '"3"'
    for bad in ("1/0", "x", True, 1.5):
        with pytest.raises(ValueError):
            parse_rational(bad)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float(x):
    assert float(float_str(x)) == x
    assert roundtrip(x, "float") == x


@given(consts)
def test_scaled_constant(c):
    assert roundtrip(c, "scaled_constant") == c


@given(polys)
def test_polynomial(p):
    assert roundtrip(p, "polynomial") == p


@given(ratfuns)
def test_ratfun(f):
    assert roundtrip(f, "ratfun") == f


@given(st.lists(fracs, max_size=8))
def test_series(c):
    s = TruncatedSeries(c)
    assert roundtrip(s, "series") == s


@given(consts, ratfuns)
def test_exp_rational(c, f):
    e = ExpRational(c, f)
    assert roundtrip(e, "exp_rational") == e


def test_exp_rational_from_library():
    e = a_k((8, 6))
    assert roundtrip(e, "exp_rational") == e


@given(st.lists(st.tuples(st.sampled_from("GRC"), st.integers(1, 3), fracs, st.integers(-2, 2)),
                max_size=4))
def test_gamma(spec):
    g = gamma_product(spec)
    assert roundtrip(g, "gamma") == g


def test_gamma_from_library():
    g = gamma_quotient_unsimplified(2, (6, 4), 1)
    assert roundtrip(g, "gamma") == g


@given(st.sampled_from([1, 3, 4, 8, 15]), st.lists(fracs, max_size=10))
def test_cyclotomic(L, c):
    x = CyclotomicNumber(L, c)
    assert roundtrip(x, "cyclotomic") == x


def test_gauss_sum_roundtrip():
    for chi in primitive_characters(13):
        g = gauss_sum(chi)
        assert roundtrip(g, "cyclotomic") == g


def test_critical():
    cd = critical_set_standard(7, chi_squared_trivial=True)
    assert roundtrip(cd, "critical") == cd


def test_matrix():
    m = np.array([[Fraction(1, 2), Fraction(3)], [Fraction(-1), Fraction(0)]], dtype=object)
    assert np.all(roundtrip(m, "matrix") == m)


def test_canonical_text_is_stable():
    v = {"b": Fraction(1, 3), "a": [1, 2.5, 1j]}
    text = serialize(v)
    assert text == serialize(dict(reversed(list(v.items()))))
    assert json.loads(text)["b"] == "1/3"
    assert text.index('"a"') < text.index('"b"')
    assert to_jsonable(1j) == {"re": float_str(0.0), "im": float_str(1.0)}


def test_unknown_kind_and_type():
    with pytest.raises(ValueError):
        deserialize("[]", "nope")
    with pytest.raises(TypeError):
        serialize(object())
    assert "rational" in KINDS
