"""Acceptance criteria, one test per criterion.

Run with pytest (a summary line per criterion is printed at the end of the
session) or directly: ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import brute_force_kernel_dim, relation_exists, satisfies_equation, small_polys  # noqa: E402

from freealg.bimodule import classify_monomial, solve_commutator_equation
from freealg.endo import (
    Endomorphism,
    check_inverse,
    decompose_tame,
    invert,
    is_retraction,
    orbit_witness,
    random_tame,
    retract_generator,
)
from freealg.errors import BasisExhausted, NotAutomorphism
from freealg.estimate import alg_dependent, build_counterexample, check_conjecture_inequality, estimate_harness
from freealg.fields import GF, QQ
from freealg.malcev import (
    build_theorem9_input,
    gw_degree,
    gw_has_inverse,
    mn_fractional_power,
    mn_sqrt_char2,
    negative_power_witness,
)
from freealg.parsing import parse_poly
from freealg.poly import Polynomial


def test_criterion_1_counterexample_family():
    start = time.perf_counter()
    for F in (GF(2), QQ):
        ratios = []
        for k in range(2, 7):
            fam = build_counterexample(k, F)
            assert fam.f.degree == 6 * k + 3
            assert fam.g.degree == 4 * k + 2
            assert fam.comm_degree == 2 * k + 5
            assert fam.ratio == Fraction(2 * k + 5, 4 * k + 2)
            assert fam.ratio > Fraction(1, 2)
            assert check_conjecture_inequality(fam.f, fam.g).violated
            ratios.append(fam.ratio)
        assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert time.perf_counter() - start < 10


def test_criterion_2_degree_estimate_harness():
    start = time.perf_counter()
    reports = estimate_harness(200, seed=0, field=QQ)
    assert len(reports) == 200
    bad = [(str(f), str(g), str(P)) for f, g, P, r in reports if not r.inequality_holds]
    assert not bad, bad[:3]
    assert all(r.hypotheses_hold for *_, r in reports)
    assert time.perf_counter() - start < 60


def test_criterion_3_sqrt_and_negative_power_witness():
    start = time.perf_counter()
    g = build_theorem9_input(2, "lemma10", GF(2))
    problems = []
    try:
        h = mn_sqrt_char2(g, window=10).root
        residual = h * h + g
        if any(gw_degree(w) >= -10 for w in residual.terms):
            problems.append("residual h^2 + g has a term of degree >= -10")
    except BasisExhausted as exc:
        problems.append(f"sqrt: {exc.code} {exc.context}")
    # the witness must have positive degree, so a value exact down to degree 0 decides it
    power = mn_fractional_power(g, 3, 2, window=0)
    assert power.value.floor <= 0
    w = negative_power_witness(power.value)
    if w is None:
        problems.append(f"witness: none; positive part of g^(3/2) is {power.value}")
    elif not (gw_degree(w) > 0 and gw_has_inverse(w)):
        problems.append(f"witness {w} malformed")
    assert time.perf_counter() - start < 120
    assert not problems, "; ".join(problems)


def test_criterion_4_tame_round_trip():
    start = time.perf_counter()
    for F in (QQ, GF(3)):
        rng = random.Random(0)
        for _ in range(100):
            _, e = random_tame(rng, F, rng.randint(1, 6))
            dec = decompose_tame(e)
            assert dec.recompose() == e
            assert check_inverse(e, invert(e), dec)
    for fx, fy, condition in (
        ("x^2", "y", "leading form not a power"),
        ("x*y", "y", "leading form not a power"),
        ("x + y^2", "x + y^3", "degree divisibility fails"),
    ):
        e = Endomorphism(parse_poly(fx), parse_poly(fy))
        with pytest.raises(NotAutomorphism) as info:
            decompose_tame(e)
        cert = info.value.certificate
        assert cert.condition == condition
        assert cert.verify()
    assert time.perf_counter() - start < 60


def test_criterion_5_retraction_toolkit():
    start = time.perf_counter()
    x = Polynomial.var(0)
    e = Endomorphism(x, x**2)
    assert is_retraction(e)
    assert retract_generator(e) == x
    r = x**2 + x
    assert retract_generator(Endomorphism(r, r**2)) == r
    wit = orbit_witness(e, x)
    assert wit.M == 1 and wit.deg_r == 2 * wit.M
    assert time.perf_counter() - start < 5


def test_criterion_6_dependence_oracle():
    start = time.perf_counter()
    F = GF(2)
    polys = small_polys(3, 2)
    lib = [Polynomial({w: 1 for w in p}, F) for p in polys]
    mismatches = []
    for i, a in enumerate(polys):
        for j, b in enumerate(polys):
            if alg_dependent(lib[i], lib[j]) != relation_exists(a, b):
                mismatches.append((str(lib[i]), str(lib[j])))
    assert len(polys) == 120
    assert not mismatches, mismatches[:5]
    assert time.perf_counter() - start < 120


def test_criterion_7_bimodule():
    start = time.perf_counter()
    u = (0, 1, 0)
    cls = classify_monomial(u, (0, 1))
    assert (cls.kind, cls.v1, cls.v2, cls.k) == ("Type3", (0,), (1,), 1)
    assert cls.t1 + u == u + cls.t2 == (0, 1, 0, 1, 0)
    assert cls.verify(u)
    sol = solve_commutator_equation((0, 1), 1, 2, 3, GF(2))
    for s, r in sol.basis:
        assert satisfies_equation((0, 1), 1, 2, frozenset(s.terms), frozenset(r.terms))
    # basis is independent and inside the solution set, so equal dimension means equal spaces
    assert sol.dimension == brute_force_kernel_dim((0, 1), 1, 2, 3)
    assert time.perf_counter() - start < 60


CRITERIA = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]


if __name__ == "__main__":
    failed = 0
    for fn in CRITERIA:
        t0 = time.perf_counter()
        try:
            fn()
            status, note = "PASS", ""
        except Exception as exc:  # noqa: BLE001
            failed += 1
            status, note = "FAIL", f" ({type(exc).__name__}: {exc})"
        print(f"{status} {fn.__name__} [{time.perf_counter() - t0:.2f}s]{note}")
    sys.exit(1 if failed else 0)
