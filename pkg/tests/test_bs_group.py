from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bscomm.bs_group import (
    GroupContext,
    evaluate,
    format_word,
    from_matrix,
    normal_form,
    parse_word,
    root_extract,
    to_matrix,
    tokenize,
)
from bscomm.errors import ContextMismatch, NotInHn, WordSyntaxError
from bscomm.exact_arith import GMatrix

from conftest import element_pairs, elements, ns

G2 = GroupContext(2)


def el(u, k=0, ctx=G2):
    return ctx.element(Fraction(u), k)


def test_parse_examples():
    assert parse_word("a^-1 b a", G2) == el(2)
    assert parse_word("", G2) == G2.identity
    assert parse_word("a b a^-1", G2) == el(Fraction(1, 2))
    assert parse_word("AbA^-2 B*a^3", G2) == parse_word("a^-1 b a^2 b^-1 a^3", G2)


def test_word_syntax_errors_carry_position():
    with pytest.raises(WordSyntaxError) as err:
        parse_word("a b c", G2)
    assert err.value.position == 4
    with pytest.raises(WordSyntaxError):
        parse_word("a^", G2)
    with pytest.raises(WordSyntaxError):
        parse_word("b^x", G2)


def test_tokenize_folds_adjacent_letters():
    assert tokenize("a a a^-1 b b") == [("a", 1), ("b", 2)]
    assert tokenize("a A") == []


def test_mul_examples():
    a, b = G2.a, G2.b
    assert a * b == el(1, 1)
    assert el(1, 1) * el(1, 1) == el(3, 2)
    assert a.inverse() == el(0, -1)
    assert b**2 == el(2)
    for n in (2, 3, 10):
        ctx = GroupContext(n)
        assert ctx.b**n == ctx.b_j(1)
        assert ctx.a.inverse() * ctx.b * ctx.a == ctx.b**n


@given(ns, st.integers(-4, 4))
def test_b_j_is_conjugate(n, j):
    ctx = GroupContext(n)
    assert ctx.b_j(j) == ctx.a ** (-j) * ctx.b * ctx.a**j
    assert ctx.b_j(j) ** n == ctx.b_j(j + 1)


@given(ns, st.integers(-20, 20), st.integers(-4, 4).filter(bool), st.integers(-5, 5))
def test_power_closed_form(n, l, k, s):
    ctx = GroupContext(n)
    g = ctx.element(l, k)
    expected = ctx.identity
    for _ in range(abs(s)):
        expected = expected * (g if s > 0 else g.inverse())
    assert g**s == expected
    if s > 0:
        assert (g**s).u.value == l * (Fraction(n) ** (k * s) - 1) / (Fraction(n) ** k - 1)


@given(element_pairs())
def test_group_axioms(pair):
    g, h = pair
    assert (g * h).inverse() == h.inverse() * g.inverse()
    assert g * g.inverse() == g.inverse() * g
    assert (g * g.inverse()).is_identity()


@given(element_pairs(), elements(2))
def test_associativity(pair, _):
    g, h = pair
    x = h.inverse() * g
    assert (g * h) * x == g * (h * x)


def test_matrix_examples():
    assert to_matrix(G2.a) == GMatrix(0, 2)
    assert to_matrix(G2.b) == GMatrix(1, 1)
    assert from_matrix(GMatrix(Fraction(1, 2), 4), G2) == el(Fraction(1, 2), 2)


def test_from_matrix_rejects_outside_hn():
    with pytest.raises(NotInHn):
        from_matrix(GMatrix(Fraction(1, 3), 1), G2)
    with pytest.raises(NotInHn):
        from_matrix(GMatrix(0, 3), G2)
    with pytest.raises(NotInHn):
        G2.element(Fraction(1, 3), 0)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        G2.a * GroupContext(3).b


@given(element_pairs())
def test_matrix_embedding_is_a_homomorphism(pair):
    g, h = pair
    ctx = GroupContext(g.n)
    assert to_matrix(g * h) == to_matrix(g) * to_matrix(h)
    assert from_matrix(to_matrix(g), ctx) == g


def test_normal_form_examples():
    assert normal_form(G2.identity) == []
    assert format_word(normal_form(el(3))) == "b^3"
    assert format_word(normal_form(el(Fraction(1, 2)))) == "a b a^-1"
    assert format_word(normal_form(el(2))) == "b^2"


@given(elements())
def test_normal_form_round_trips(g):
    ctx = GroupContext(g.n)
    text = format_word(normal_form(g))
    assert parse_word(text, ctx) == g
    assert evaluate(normal_form(g), ctx) == g
    assert str(g) == text


def test_root_examples():
    g = el(3, 2)
    assert root_extract(g, 1) == g
    assert root_extract(g, 2) == el(1, 1)
    assert root_extract(G2.b, 3) is None
    assert root_extract(el(0, 3), 2) is None
    assert root_extract(el(4), 2) == el(2)


def test_root_none_agrees_with_ball_search():
    from bscomm.quasi_isometry import ball

    assert not any(h**3 == G2.b for h in ball(G2, 8))


@given(elements(), st.integers(1, 6))
def test_roots_are_unique(g, r):
    assert root_extract(g**r, r) == g
