import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympullback.archimedean import InvalidWeight
from sympullback.ktypes import (admissible_lambdas, blattner_multiplicity, minimal_ktype,
                                noncompact_roots, q_partition_count, validate_lambda)

from oracles import holomorphic_ktype_multiplicity, root_partition_count_brute


@given(st.lists(st.integers(0, 6), min_size=1, max_size=3))
def test_partition_count_matches_enumeration(mu):
    assert q_partition_count(mu) == root_partition_count_brute(mu)


def test_partition_count_rejects_negative_and_odd():
    assert q_partition_count([-1, 3]) == 0
    assert q_partition_count([1, 0]) == 0
    assert q_partition_count([2, 0]) == 1


def test_noncompact_roots():
    assert noncompact_roots(2) == ((2, 0), (1, 1), (0, 2))
    assert len(noncompact_roots(4)) == 10


@pytest.mark.parametrize("n", [1, 2, 3])
def test_blattner_against_holomorphic_decomposition(n):
    for lam in admissible_lambdas(n, 8):
        for m in range(6):
            assert blattner_multiplicity(lam, m) == holomorphic_ktype_multiplicity(m), (lam, m)


def test_admissible_lambdas():
    lams = list(admissible_lambdas(2, 5))
    assert lams == [(2, 1), (3, 2), (4, 1), (4, 3), (5, 2), (5, 4)]
    for lam in lams:
        assert validate_lambda(lam) == lam


def test_minimal_ktype():
    assert minimal_ktype((5, 2)) == (6, 4)
    assert minimal_ktype((2, 1)) == (3, 3)
    assert minimal_ktype((3, 2, 1)) == (4, 4, 4)


@pytest.mark.parametrize("bad", [(), (1, 2), (3, 0), (3, 1), (5, 3)])
def test_invalid_parameters(bad):
    with pytest.raises(InvalidWeight):
        validate_lambda(bad)


def test_negative_m():
    with pytest.raises(ValueError):
        blattner_multiplicity((3, 1), -2)
