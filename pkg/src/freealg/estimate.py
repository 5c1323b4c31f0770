"""Degree-estimate checks for pairs of polynomials in K<x, y>.

Algebraic dependence of two nonzero elements of a free associative algebra is
equivalent to their commuting, so every dependence test here is a commutator
test.  The estimate compares ``deg P(f, g)`` with
``deg([f, g]) / (deg f + deg g) * w_{deg f, deg g}(P)`` in exact rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .errors import BadK, HypothesesNotMet, ZeroInput
from .fields import QQ, Field, field_from_selector
from .poly import NEG_INF, Polynomial, commutator


def alg_dependent(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero() or b.is_zero():
        raise ZeroInput("algebraic dependence is tested on nonzero inputs")
    return commutator(a, b).is_zero()


def _divides(a, b) -> bool:
    return a != 0 and b % a == 0


@dataclass
class EstimateReport:
    hypotheses_hold: bool
    dep_leading: bool
    div_fail: bool
    alg_indep: bool
    D: Optional[Fraction]
    w: int
    lhs: float
    bound: Optional[Fraction]
    inequality_holds: Optional[bool]
    comm_degree: float = NEG_INF

    def to_json(self) -> dict:
        def num(v):
            if v is None:
                return None
            if v == NEG_INF:
                return "-inf"
            return str(v)

        return {
            "hypotheses_hold": self.hypotheses_hold,
            "dep_leading": self.dep_leading,
            "div_fail": self.div_fail,
            "alg_indep": self.alg_indep,
            "D": num(self.D),
            "w": num(self.w),
            "lhs": num(self.lhs),
            "bound": num(self.bound),
            "inequality_holds": self.inequality_holds,
            "comm_degree": num(self.comm_degree),
        }


def check_estimate(f: Polynomial, g: Polynomial, P: Polynomial) -> EstimateReport:
    if f.is_zero() or g.is_zero() or P.is_zero():
        raise ZeroInput("f, g and P must be nonzero")
    df, dg = f.degree, g.degree
    comm = commutator(f, g)
    alg_indep = not comm.is_zero()
    dep_leading = alg_dependent(f.leading_form(), g.leading_form())
    div_fail = not _divides(df, dg) and not _divides(dg, df)
    w = P.weighted_degree([max(df, 1), max(dg, 1)])
    lhs = P.substitute([f, g]).degree
    if alg_indep and df + dg > 0:
        D = Fraction(comm.degree, df + dg)
        bound = D * w
        holds = lhs >= bound
    else:
        D = bound = holds = None
    return EstimateReport(
        hypotheses_hold=dep_leading and div_fail and alg_indep,
        dep_leading=dep_leading,
        div_fail=div_fail,
        alg_indep=alg_indep,
        D=D,
        w=w,
        lhs=lhs,
        bound=bound,
        inequality_holds=holds,
        comm_degree=comm.degree,
    )


@dataclass
class CounterexampleFamily:
    k: int
    field: Field
    u: Polynomial
    v: Polynomial
    w: Polynomial
    r: Polynomial
    s: Polynomial
    f: Polynomial
    g: Polynomial
    comm_degree: int = dc_field(init=False)
    ratio: Fraction = dc_field(init=False)

    def __post_init__(self):
        self.comm_degree = commutator(self.f, self.g).degree
        self.ratio = Fraction(self.comm_degree, self.g.degree)

    @property
    def violates_conjecture(self) -> bool:
        return self.comm_degree <= min(self.f.degree, self.g.degree)

    def summary(self) -> dict:
        return {
            "k": self.k,
            "field": self.field.selector,
            "deg_f": self.f.degree,
            "deg_g": self.g.degree,
            "deg_comm": self.comm_degree,
            "ratio": str(self.ratio),
            "conjecture_violated": self.violates_conjecture,
        }


def build_counterexample(k: int, field: Field | str = QQ) -> CounterexampleFamily:
    """u=(xy)^k x, v=xy, w=yx, f=u^3+uv+uw+wu, g=u^2+v+w."""
    if k < 2:
        raise BadK(f"k must be >= 2, got {k}", k=k)
    F = field_from_selector(field)
    u = Polynomial.monomial((0, 1) * k + (0,), 1, F)
    v = Polynomial.monomial((0, 1), 1, F)
    w = Polynomial.monomial((1, 0), 1, F)
    r = u * v + u * w + w * u
    s = v + w
    return CounterexampleFamily(k, F, u, v, w, r, s, u**3 + r, u**2 + s)


@dataclass(frozen=True)
class ConjectureCheck:
    min_deg: int
    comm_deg: int
    violated: bool


def check_conjecture_inequality(f: Polynomial, g: Polynomial) -> ConjectureCheck:
    """Evaluate ``deg [f,g] > min(deg f, deg g)`` after checking its hypotheses."""
    if f.is_zero() or g.is_zero():
        raise HypothesesNotMet("f and g must be nonzero", clause="nonzero")
    comm = commutator(f, g)
    if comm.is_zero():
        raise HypothesesNotMet("f and g are algebraically dependent", clause="alg_indep")
    if not alg_dependent(f.leading_form(), g.leading_form()):
        raise HypothesesNotMet(
            "leading forms are algebraically independent", clause="dep_leading"
        )
    df, dg = f.degree, g.degree
    if _divides(df, dg) or _divides(dg, df):
        raise HypothesesNotMet(f"degree divisibility holds ({df}, {dg})", clause="div_fail")
    m = min(df, dg)
    return ConjectureCheck(m, comm.degree, comm.degree <= m)


# Lemma harnesses


def _linear_power_form(form: Polynomial):
    """Return ``(c, beta)`` when ``form == c * (x + beta*y)^n``, ``(c, None)`` for
    ``c * y^n``, or ``None`` when ``form`` is not a power of a linear form."""
    n = form.degree
    F = form.field
    cx = form.coeff((0,) * n)
    x = Polynomial.var(0, F)
    y = Polynomial.var(1, F)
    if cx != 0:
        beta = F.div(form.coeff((0,) * (n - 1) + (1,)), cx)
        if (x + y.scale(beta)) ** n * cx == form:
            return cx, beta
        return None
    cy = form.coeff((1,) * n)
    if cy != 0 and form == (y**n).scale(cy):
        return cy, None
    return None


def surely_outer_rank_two(p: Polynomial) -> bool:
    """Sufficient test: the leading form of ``h(c)`` with ``c`` a coordinate is a
    scalar times a power of a linear form, so any ``p`` whose leading form is not
    of that shape genuinely needs both coordinates."""
    if p.degree < 1:
        return False
    return _linear_power_form(p.leading_form()) is None


def _require_outer_rank_two(p: Polynomial):
    if not surely_outer_rank_two(p):
        raise HypothesesNotMet(
            "p is not certified outer rank 2 (leading form is a power of a linear form)",
            clause="outer_rank_2",
        )


def check_lemma4(p: Polynomial, deg_f: int, deg_g: int) -> bool:
    """``w(p) >= deg f + deg g``; strict when a mixed monomial has degree > 2."""
    _require_outer_rank_two(p)
    w = p.weighted_degree([deg_f, deg_g])
    ok = w >= deg_f + deg_g
    if any(len(wd) > 2 and len(set(wd)) == 2 for wd in p.terms):
        ok = ok and w > deg_f + deg_g
    return ok


def check_lemma5(f: Polynomial, g: Polynomial, p: Polynomial) -> bool:
    """``deg p(f,g) >= deg [f,g]`` for an injective pair and outer-rank-2 ``p``."""
    _require_outer_rank_two(p)
    comm = commutator(f, g)
    if comm.is_zero():
        raise HypothesesNotMet("(f, g) is not injective: f and g commute", clause="injective")
    return p.substitute([f, g]).degree >= comm.degree


def check_lemma6(f: Polynomial, g: Polynomial, kmax: int = 4) -> list[tuple[int, int, bool]]:
    """Iterate ``phi = (f, g)``; rows ``(k, deg [phi^k x, phi^k y], ok)``."""
    from .endo import Endomorphism, is_automorphism

    phi = Endomorphism(f, g)
    if commutator(f, g).is_zero():
        raise HypothesesNotMet("phi is not injective", clause="injective")
    if is_automorphism(phi):
        raise HypothesesNotMet("phi is an automorphism", clause="non_automorphism")
    rows = []
    cur = phi
    for k in range(1, kmax + 1):
        d = commutator(cur.fx, cur.fy).degree
        rows.append((k, d, d >= k + 2))
        cur = phi.compose(cur)
    return rows


# random instances for the estimate harness


def random_poly(rng: random.Random, field: Field, max_deg: int, max_terms: int, min_deg: int = 0) -> Polynomial:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(min_deg, max_deg)
        word = tuple(rng.randrange(2) for _ in range(d))
        terms[word] = _random_nonzero(rng, field)
    return Polynomial(terms, field)


def _random_nonzero(rng, field):
    if field.characteristic:
        return rng.randrange(1, field.characteristic)
    c = 0
    while c == 0:
        c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return c


_EXPONENTS = [(2, 3), (3, 2), (3, 4), (4, 3), (2, 5), (5, 2)]


def random_estimate_instance(rng: random.Random, field: Field = QQ):
    """``f = h^a + tail``, ``g = h^b + tail`` with ``a`` and ``b`` mutually
    non-dividing, plus a small random ``P``."""
    while True:
        core = random_poly(rng, field, 3, 2, min_deg=2)
        if core.degree >= 2:
            break
    a, b = rng.choice(_EXPONENTS)
    d = core.degree
    f = core**a + random_poly(rng, field, a * d - 1, 5)
    g = core**b + random_poly(rng, field, b * d - 1, 5)
    P = random_poly(rng, field, 3, 4, min_deg=1)
    return f, g, P


def estimate_harness(cases: int, seed: int = 0, field: Field = QQ, max_draws: int = 100_000):
    """Draw instances until ``cases`` of them satisfy the hypotheses; return
    their reports in draw order."""
    rng = random.Random(seed)
    reports = []
    draws = 0
    while len(reports) < cases and draws < max_draws:
        draws += 1
        f, g, P = random_estimate_instance(rng, field)
        rep = check_estimate(f, g, P)
        if rep.hypotheses_hold:
            reports.append((f, g, P, rep))
    return reports
