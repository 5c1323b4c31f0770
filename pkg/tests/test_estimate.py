from fractions import Fraction

import pytest

from freealg.errors import BadK, HypothesesNotMet, ZeroInput
from freealg.estimate import (
    alg_dependent,
    build_counterexample,
    check_conjecture_inequality,
    check_estimate,
    check_lemma4,
    check_lemma5,
    check_lemma6,
    estimate_harness,
    surely_outer_rank_two,
)
from freealg.fields import GF, QQ
from freealg.parsing import parse_poly as P


def test_trivial_pair_fails_hypotheses():
    rep = check_estimate(P("x"), P("y"), P("x*y"))
    assert not rep.hypotheses_hold
    assert not rep.dep_leading
    assert rep.to_json()["hypotheses_hold"] is False


def test_exact_rational_bound():
    f = P("(x*y)^2 + x")  # degree 4
    g = P("(x*y)^3 + y")  # degree 6
    rep = check_estimate(f, g, P("x*y"))
    assert rep.hypotheses_hold
    assert isinstance(rep.D, Fraction)
    assert rep.w == 10
    assert rep.D == Fraction(rep.comm_degree, 10)
    assert rep.bound == rep.D * 10
    assert rep.inequality_holds


def test_dependent_pair_has_no_bound():
    rep = check_estimate(P("x^2"), P("x^3"), P("x"))
    assert not rep.alg_indep
    assert rep.D is None and rep.inequality_holds is None


def test_zero_inputs_rejected():
    with pytest.raises(ZeroInput):
        check_estimate(P("0"), P("x"), P("x"))
    with pytest.raises(ZeroInput):
        alg_dependent(P("0"), P("x"))


def test_alg_dependent():
    assert alg_dependent(P("x^2 + x"), P("x^3"))
    assert alg_dependent(P("x*y"), P("x*y*x*y + 3"))
    assert not alg_dependent(P("x*y"), P("y*x"))


@pytest.mark.parametrize("F", [QQ, GF(2), GF(3)])
@pytest.mark.parametrize("k", [2, 3, 4])
def test_counterexample_degrees(F, k):
    fam = build_counterexample(k, F)
    assert (fam.f.degree, fam.g.degree, fam.comm_degree) == (6 * k + 3, 4 * k + 2, 2 * k + 5)
    assert fam.violates_conjecture
    assert fam.summary()["ratio"] == str(Fraction(2 * k + 5, 4 * k + 2))


def test_counterexample_k_validation():
    with pytest.raises(BadK):
        build_counterexample(1)


def test_conjecture_hypotheses():
    with pytest.raises(HypothesesNotMet) as info:
        check_conjecture_inequality(P("x"), P("y"))
    assert info.value.context["clause"] == "dep_leading"
    with pytest.raises(HypothesesNotMet) as info:
        check_conjecture_inequality(P("x^2"), P("x^3"))
    assert info.value.context["clause"] == "alg_indep"
    with pytest.raises(HypothesesNotMet) as info:
        check_conjecture_inequality(P("x^2 + y"), P("x^4"))
    assert info.value.context["clause"] == "div_fail"


def test_outer_rank_two_proxy():
    assert surely_outer_rank_two(P("x*y"))
    assert not surely_outer_rank_two(P("(x + 2*y)^3 + y"))
    assert not surely_outer_rank_two(P("y^2"))


def test_lemma4_and_5():
    assert check_lemma4(P("x*y + y*x"), 2, 3)
    assert check_lemma4(P("x*y*x"), 2, 3)
    with pytest.raises(HypothesesNotMet):
        check_lemma4(P("x^2"), 2, 3)
    assert check_lemma5(P("x + y^2"), P("y"), P("x*y - y*x"))
    with pytest.raises(HypothesesNotMet):
        check_lemma5(P("x"), P("x^2"), P("x*y"))


def test_lemma6_rows():
    rows = check_lemma6(P("x^2"), P("y"), 3)
    assert [r[0] for r in rows] == [1, 2, 3]
    assert all(ok for *_, ok in rows)
    with pytest.raises(HypothesesNotMet):
        check_lemma6(P("x + y^2"), P("y"), 2)


def test_harness_is_seeded():
    a = estimate_harness(10, seed=7)
    b = estimate_harness(10, seed=7)
    assert [str(r[0]) for r in a] == [str(r[0]) for r in b]
    assert all(r[3].hypotheses_hold and r[3].inequality_holds for r in a)
