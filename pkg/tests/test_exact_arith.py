import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bscomm.exact_arith import (
    GMatrix,
    NAdicRational,
    coprime_part,
    factorize,
    format_rational,
    gmat_inv,
    gmat_mul,
    multiplicative_order,
    nadic_canonicalize,
    parse_gmatrix,
    parse_rational,
    power_of,
    prime_factors,
    totient,
)

from conftest import gmatrices


def rows_mul(A, B):
    return [[sum(A[i][t] * B[t][j] for t in range(2)) for j in range(2)] for i in range(2)]


def rows(M):
    return [[Fraction(1), M.q], [Fraction(0), M.p]]


def test_nadic_canonicalize_examples():
    assert nadic_canonicalize(4, 2, 2) == NAdicRational(2, 1, 0)
    assert nadic_canonicalize(6, 1, 2) == NAdicRational(2, 3, 0)
    assert nadic_canonicalize(3, 2, 2) == NAdicRational(2, 3, 2)


@given(st.integers(-10**6, 10**6), st.integers(-6, 6), st.sampled_from([2, 3, 4, 6, 10, 12]))
def test_nadic_canonical_form_is_unique(num, exp, n):
    x = nadic_canonicalize(num, exp, n)
    assert x.value == Fraction(num) / Fraction(n) ** exp
    assert x.exp >= 0
    assert x.exp == 0 or x.num % n != 0
    assert NAdicRational.from_value(x.value, n) == x


def test_from_value_rejects_foreign_denominators():
    assert NAdicRational.from_value(Fraction(1, 3), 2) is None
    assert NAdicRational.from_value(Fraction(1, 15), 6) is None
    assert NAdicRational.from_value(Fraction(1, 12), 6) == NAdicRational(6, 3, 2)
    assert NAdicRational.from_value(Fraction(1, 36), 6) is not None


@given(st.integers(-999, 999), st.integers(0, 4), st.integers(-999, 999), st.integers(0, 4))
def test_nadic_ring_operations(a, e, b, f):
    x, y = nadic_canonicalize(a, e, 6), nadic_canonicalize(b, f, 6)
    assert (x + y).value == x.value + y.value
    assert (x - y).value == x.value - y.value
    assert (x * y).value == x.value * y.value
    assert x.scale(3).value == x.value * 216


@given(st.integers(-999, 999), st.integers(0, 5), st.integers(1, 60))
def test_residue_is_the_class_mod_m(num, exp, m):
    n = 2
    if math.gcd(m, n) != 1:
        m = coprime_part(m, n) or 1
    x = nadic_canonicalize(num, exp, n)
    r = x.residue(m)
    assert 0 <= r < m
    # x - r lies in m Z[1/n]
    assert NAdicRational.from_value((x.value - r) / m, n) is not None


def test_gmat_examples():
    assert gmat_mul(GMatrix(0, 1), GMatrix(5, 7)) == GMatrix(5, 7)
    assert gmat_mul(GMatrix(1, 2), GMatrix(1, 2)) == GMatrix(3, 4)
    assert gmat_mul(GMatrix(-1, 3), GMatrix(0, Fraction(1, 3))) == GMatrix(Fraction(-1, 3), 1)
    assert gmat_inv(GMatrix(0, 1)) == GMatrix(0, 1)
    assert gmat_inv(GMatrix(1, 2)) == GMatrix(Fraction(-1, 2), Fraction(1, 2))
    assert gmat_inv(GMatrix(-1, 3)) == GMatrix(Fraction(1, 3), Fraction(1, 3))


@given(gmatrices(), gmatrices())
def test_gmat_mul_matches_generic_2x2(A, B):
    assert rows(A * B) == rows_mul(rows(A), rows(B))
    assert A * A.inverse() == GMatrix.identity()


@given(gmatrices(), st.integers(-5, 5))
def test_gmat_power(A, e):
    expected = GMatrix.identity()
    step = A if e >= 0 else A.inverse()
    for _ in range(abs(e)):
        expected = expected * step
    assert A**e == expected


def test_gmatrix_rejects_singular():
    with pytest.raises(ValueError):
        GMatrix(1, 0)


def test_gmatrix_predicates():
    assert GMatrix(0, 8).in_hn(2)
    assert not GMatrix(0, 6).in_hn(2)
    assert not GMatrix(Fraction(1, 3), 2).in_hn(2)
    assert GMatrix(0, -1).is_diagonal() and GMatrix(3, 1).is_unipotent()


def test_rational_io():
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    assert parse_rational("-7/21") == Fraction(-1, 3)
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("x")


@given(gmatrices())
def test_gmatrix_round_trips_through_text(M):
    assert parse_gmatrix(str(M)) == M


def test_parse_gmatrix_errors():
    for bad in ("[1 0; 0 0]", "[2 0; 0 1]", "1 0 0 1"):
        with pytest.raises(ValueError):
            parse_gmatrix(bad)


def test_number_theory():
    assert prime_factors(360) == [2, 3, 5]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert coprime_part(360, 6) == 5
    assert coprime_part(-45, 3) == 5
    assert totient(1) == 1 and totient(36) == 12 and totient(49) == 42
    assert multiplicative_order(2, 3) == 2
    assert multiplicative_order(10, 7) == 6
    assert multiplicative_order(5, 1) == 1
    assert power_of(Fraction(1, 8), 2) == -3
    assert power_of(Fraction(6), 2) is None
    assert power_of(Fraction(-2), 2) is None


@given(st.integers(1, 2000))
def test_totient_matches_count(s):
    assert totient(s) == sum(1 for i in range(1, s + 1) if math.gcd(i, s) == 1)


@given(st.sampled_from([2, 3, 10]), st.integers(1, 500))
def test_multiplicative_order_is_least(n, s):
    s = coprime_part(s, n)
    k = multiplicative_order(n, s)
    assert pow(n, k, s) == 1 % s
    assert all(pow(n, j, s) != 1 for j in range(1, k)) or s == 1
