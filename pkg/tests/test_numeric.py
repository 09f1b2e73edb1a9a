import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from primzono.numeric import (INF, ArithmeticOverflowError, SignedPermutation, checked_matmul,
                              gcd_rows, gcd_vec, is_lex_positive, mobius, norm_le, parse_norm,
                              primitive_rows, signed_permutations, totient, totient_table)

from oracles import naive_totient


def test_gcd_vec():
    assert gcd_vec((2, 4, -6)) == 2
    assert gcd_vec((0, 1)) == 1
    assert gcd_vec((0, 0, 0)) == 0
    assert gcd_vec((-3,)) == 3


def test_lex_positive():
    assert is_lex_positive((0, 1))
    assert is_lex_positive((1, -1))
    assert not is_lex_positive((0, -1))
    assert not is_lex_positive((0, 0))


def test_norm_le_exact():
    assert norm_le((1, -1), 1, 2)
    assert norm_le((1, 2), INF, 2)
    assert not norm_le((1, 2), 1, 2)
    # 3^2 + 4^2 == 5^2 sits exactly on the sphere
    assert norm_le((3, 4), 2, 5)
    assert not norm_le((3, 5), 2, 5)


def test_parse_norm():
    assert parse_norm("inf") == INF
    assert parse_norm("2") == 2
    assert parse_norm(INF) == INF
    for bad in (0, -1, 1.5, "x"):
        with pytest.raises(ValueError):
            parse_norm(bad)


def test_totient_values():
    assert totient(1) == 1
    assert [totient(j) for j in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert totient_table(30)[1:].tolist() == [naive_totient(j) for j in range(1, 31)]
    with pytest.raises(ValueError):
        totient(0)


@given(st.integers(1, 400))
def test_totient_matches_count(j):
    assert totient(j) == naive_totient(j) == totient_table(j)[j]


@given(st.integers(1, 500))
def test_mobius_sums_to_delta(n):
    s = sum(mobius(k) for k in range(1, n + 1) if n % k == 0)
    assert s == (1 if n == 1 else 0)


def test_signed_permutations():
    assert len(list(signed_permutations(3))) == 48
    g = SignedPermutation((1, 0), (1, -1))
    assert g.apply((1, 2)) == (2, -1)
    assert SignedPermutation.identity(3).apply((4, 5, 6)) == (4, 5, 6)
    with pytest.raises(ValueError):
        g.apply((1, 2, 3))
    with pytest.raises(ValueError):
        SignedPermutation((0, 0), (1, 1))


@given(st.lists(st.lists(st.integers(-50, 50), min_size=3, max_size=3), min_size=1, max_size=20))
def test_row_helpers_agree_with_scalar(rows):
    M = np.array(rows, dtype=np.int64)
    assert gcd_rows(M).tolist() == [gcd_vec(r) for r in rows]
    P = primitive_rows(M)
    for r, pr in zip(rows, P.tolist()):
        g = gcd_vec(r)
        assert pr == ([x // g for x in r] if g else r)


def test_checked_matmul_overflow():
    A = np.array([[2**40]], dtype=np.int64)
    with pytest.raises(ArithmeticOverflowError):
        checked_matmul(A, np.array([[2**30]]))
    assert checked_matmul(np.array([[2, 3]]), np.array([[1], [1]])).tolist() == [[5]]
    assert issubclass(ArithmeticOverflowError, OverflowError)
    assert math.isinf(INF)
