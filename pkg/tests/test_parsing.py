from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from freealg.errors import BadCoefficient, ParseError, UnknownVariable
from freealg.fields import GF, QQ
from freealg.parsing import format_word, parse_poly
from freealg.poly import Polynomial


def test_basic_parse():
    p = parse_poly("x*y - y*x")
    assert p == Polynomial({(0, 1): 1, (1, 0): -1})
    assert str(p) == "-y*x + x*y"


def test_powers_of_parentheses_are_noncommutative():
    assert parse_poly("(x+y)^2") == parse_poly("x^2 + x*y + y*x + y^2")


def test_rational_coefficients():
    p = parse_poly("3/4*x^2 - 1/2")
    assert p.coeff((0, 0)) == Fraction(3, 4)
    assert p.constant_term == Fraction(-1, 2)


def test_prime_field_reduction():
    assert parse_poly("5*x + 3", GF(3)) == parse_poly("2*x", GF(3))
    with pytest.raises(BadCoefficient):
        parse_poly("1/2*x", GF(3))


def test_error_positions():
    with pytest.raises(ParseError) as info:
        parse_poly("x + * y")
    assert info.value.code == "SyntaxError"
    assert info.value.position == 4
    with pytest.raises(ParseError):
        parse_poly("x^0")
    with pytest.raises(ParseError):
        parse_poly("(x + y")


def test_unknown_variable():
    with pytest.raises((UnknownVariable, ParseError)):
        parse_poly("z")


def test_larger_alphabet():
    p = parse_poly("x1*x3 + x2", QQ, 3)
    assert p.nvars == 3
    assert p.coeff((0, 2)) == 1


def test_format_word():
    assert format_word((0, 1, 1, 0)) == "x*y^2*x"
    assert format_word(()) == "1"


words = st.lists(st.integers(0, 1), max_size=5).map(tuple)


@settings(max_examples=80, deadline=None)
@given(st.dictionaries(words, st.fractions(max_denominator=5), max_size=5))
def test_print_parse_round_trip(terms):
    p = Polynomial(terms, QQ)
    assert parse_poly(str(p)) == p


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(words, st.integers(0, 4), max_size=5))
def test_print_parse_round_trip_fp(terms):
    p = Polynomial(terms, GF(5))
    assert parse_poly(str(p), GF(5)) == p
