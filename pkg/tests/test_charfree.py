import pytest
from hypothesis import given, strategies as st

from oracles import squarefree_by_factoring
from twogroup_maps.charfree import SquareWitness, is_squarefree, square_divisor_scan
from twogroup_maps.errors import ParameterError, ScaleError
from twogroup_maps.reference import SQUARE_WITNESS_TABLE


def test_squarefree_examples():
    assert is_squarefree(2 - 2**3)
    assert not is_squarefree(63)
    assert is_squarefree(1)


def test_squarefree_rejects_zero_and_huge_values():
    with pytest.raises(ParameterError):
        is_squarefree(0)
    with pytest.raises(ScaleError):
        is_squarefree(2**61)


def test_squarefree_agrees_with_factoring_up_to_one_million():
    # sampled in a stride so the full range is covered without a 10^6 loop
    for n in list(range(1, 5000)) + list(range(5000, 10**6 + 1, 997)):
        assert is_squarefree(n) == squarefree_by_factoring(n)
        assert is_squarefree(-n) == is_squarefree(n)


@given(st.integers(1, 10**6))
def test_squarefree_random_agreement(n):
    assert is_squarefree(n) == squarefree_by_factoring(n)


@given(st.integers(2, 2**20), st.integers(2, 2**20))
def test_products_with_a_square_factor_are_detected(p, q):
    assert not is_squarefree(p * p * q)


def test_large_cofactors():
    # a square of a prime above the cube root of n
    p = 1_000_003
    assert not is_squarefree(p * p * 7)
    assert is_squarefree(p * 1_000_033)


def test_square_divisor_examples():
    assert square_divisor_scan(20).x == 5
    assert square_divisor_scan(110).x == 11
    assert square_divisor_scan(7).x is None


@pytest.mark.parametrize("d, x", SQUARE_WITNESS_TABLE)
def test_every_multiple_has_a_witness_at_most_x(d, x):
    for n in range(1, 1000 // d + 1):
        w = square_divisor_scan(n * d, x)
        assert w.x is not None and w.x <= x
        assert pow(2, n * d, w.x * w.x) == 1


def test_witness_checks_itself():
    with pytest.raises(ValueError):
        SquareWitness(7, 3)
    assert SquareWitness(6, 3).x == 3


def test_scan_limits():
    with pytest.raises(ScaleError):
        square_divisor_scan(10**6 + 1)
    with pytest.raises(ParameterError):
        square_divisor_scan(0)
