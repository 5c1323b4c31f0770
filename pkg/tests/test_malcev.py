import pytest
from hypothesis import given, settings, strategies as st

from freealg.errors import (
    BadK,
    BasisExhausted,
    CharDividesN,
    InsufficientFloor,
    NotASquareLeading,
    ParseError,
)
from freealg.fields import GF, QQ
from freealg.malcev import (
    TruncatedSeries,
    build_theorem9_input,
    format_group_word,
    gw_degree,
    gw_inv,
    gw_mul,
    gw_reduce,
    gw_root,
    mn_fractional_power,
    mn_nth_root,
    mn_sqrt_char2,
    negative_power_witness,
    parse_series,
    series_mul,
    sqrt_obstruction,
)
from freealg.poly import NEG_INF

letters = st.sampled_from([1, -1, 2, -2])
gwords = st.lists(letters, max_size=8).map(gw_reduce)


@settings(max_examples=100)
@given(a=gwords, b=gwords, c=gwords)
def test_free_group_laws(a, b, c):
    assert gw_mul(gw_mul(a, b), c) == gw_mul(a, gw_mul(b, c))
    assert gw_mul(a, gw_inv(a)) == ()
    assert gw_degree(gw_mul(a, b)) == gw_degree(a) + gw_degree(b)


@settings(max_examples=100)
@given(w=gwords.filter(bool), n=st.integers(1, 4))
def test_group_roots(w, n):
    W = ()
    for _ in range(n):
        W = gw_mul(W, w)
    r = gw_root(W, n)
    assert r is not None
    R = ()
    for _ in range(n):
        R = gw_mul(R, r)
    assert R == W


def test_printing_and_parsing():
    s = parse_series("x*y^-1*x^2 + y", GF(2))
    assert str(s) == "x*y^-1*x^2 + y"
    assert format_group_word((1, -2, -2, 1)) == "x*y^-2*x"
    assert parse_series("x*x^-1", GF(3)).terms == {(): 1}
    with pytest.raises(ParseError):
        parse_series("x*z", GF(2))


def test_floor_rule():
    a = TruncatedSeries({(1, 1): 1, (-1,): 1}, GF(2), floor=-1)
    b = TruncatedSeries({(2,): 1}, GF(2))
    prod = series_mul(a, b)
    assert prod.floor == max(-1 + 1, NEG_INF)
    assert all(gw_degree(w) >= prod.floor for w in prod.terms)


def test_perfect_square_root():
    g = parse_series("x^2", GF(2))
    res = mn_sqrt_char2(g, 5)
    assert res.root.terms == {(1,): 1}
    assert res.steps == 0


def test_root_of_square_with_negative_tail():
    # (x + y^-1)^2 over F_3: a root with infinitely many terms truncates exactly
    F = GF(3)
    h = parse_series("x + y^-1", F)
    g = h * h
    res = mn_nth_root(g, 2, 6)
    residual = res.root * res.root - g
    assert all(gw_degree(w) < -6 for w in residual.terms)


def test_lemma10_input_window_five():
    g = build_theorem9_input(2)
    res = mn_sqrt_char2(g, 5)
    residual = res.root * res.root + g
    assert all(gw_degree(w) < -5 for w in residual.terms)
    assert str(res.root) == "x*y*x*y*x + x^-1*y^-1*x^-1"


def test_lemma10_input_window_ten_is_obstructed():
    g = build_theorem9_input(2)
    with pytest.raises(BasisExhausted) as info:
        mn_sqrt_char2(g, 10)
    ctx = info.value.context
    assert ctx["degree"] == -6
    assert ctx["window_reached"] == 5
    assert ctx["no_finite_solution"] is True


def test_obstruction_certificate():
    w = (1,)
    # x*c + c*x = y has no finite solution: y's conjugation orbit is infinite
    assert sqrt_obstruction(w, {(2,): 1}, GF(2)) == [(2,)]
    # but y + x^-1*y*x = x*(x^-1*y) + (x^-1*y)*x is reachable
    assert sqrt_obstruction(w, {(2,): 1, (-1, 2, 1): 1}, GF(2)) == []


def test_basis_cap_zero_raises():
    with pytest.raises(BasisExhausted):
        mn_nth_root(parse_series("x^2 + y", GF(3)), 2, 3, basis_rounds=0)


def test_root_errors():
    with pytest.raises(NotASquareLeading):
        mn_sqrt_char2(parse_series("x*y", GF(2)), 3)
    with pytest.raises(CharDividesN):
        mn_nth_root(parse_series("x^3", GF(3)), 3, 2)
    with pytest.raises(InsufficientFloor):
        mn_sqrt_char2(TruncatedSeries({(1, 1): 1}, GF(2), floor=-2), 5)
    with pytest.raises(BadK):
        build_theorem9_input(1)


def test_fractional_power_normalizes():
    g = parse_series("x^4", QQ)
    fp = mn_fractional_power(g, 6, 4, 2)
    assert (fp.m, fp.n, fp.normalized) == (3, 2, True)
    assert fp.value.terms == {(1, 1, 1, 1, 1, 1): 1}


def test_three_halves_power_has_no_witness():
    g = build_theorem9_input(2)
    fp = mn_fractional_power(g, 3, 2, 0)
    assert fp.value.floor <= 0
    positive = {w for w in fp.value.terms if gw_degree(w) > 0}
    assert all(c > 0 for w in positive for c in w)
    assert negative_power_witness(fp.value) is None


def test_witness_ordering():
    s = parse_series("x*y^-1*x^2 + x^-1*y^3 + x^3*y^-1", GF(2))
    # all three have degree 2; x < x^-1 < y < y^-1 picks x^3*y^-1
    assert negative_power_witness(s) == (1, 1, 1, -2)


def test_theorem9_variant_has_no_root():
    with pytest.raises(BasisExhausted) as info:
        mn_sqrt_char2(build_theorem9_input(2, "theorem9"), 0)
    assert info.value.context["no_finite_solution"] is True
