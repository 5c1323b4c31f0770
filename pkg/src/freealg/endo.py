"""Endomorphisms of K<x, y> and the tame-automorphism toolkit.

An endomorphism is the pair of images ``(fx, fy)``.  Composition follows the
substitution rule ``compose(a, b).apply(p) == a.apply(b.apply(p))``, and a
factor list ``[F1, F2, ..., Fk]`` always means ``F1 o F2 o ... o Fk`` in that
sense.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import (
    CapExceeded,
    ConstantInput,
    NoCertificateWithinBounds,
    NoConvergence,
    NotARetraction,
    NotAutomorphism,
    NotFixing,
    PreconditionFailed,
    ProperSubductionFailure,
)
from .fields import QQ, Field, field_from_selector
from .poly import Polynomial


@dataclass(frozen=True)
class Endomorphism:
    fx: Polynomial
    fy: Polynomial

    def __post_init__(self):
        self.fx._check(self.fy)

    @classmethod
    def identity(cls, field: Field | str = QQ) -> "Endomorphism":
        F = field_from_selector(field)
        return cls(Polynomial.var(0, F), Polynomial.var(1, F))

    @classmethod
    def swap(cls, field: Field | str = QQ) -> "Endomorphism":
        F = field_from_selector(field)
        return cls(Polynomial.var(1, F), Polynomial.var(0, F))

    @property
    def field(self) -> Field:
        return self.fx.field

    def apply(self, p: Polynomial) -> Polynomial:
        return p.substitute([self.fx, self.fy])

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        """``self o other``: x is sent to ``self.apply(other.fx)``."""
        return Endomorphism(self.apply(other.fx), self.apply(other.fy))

    def power(self, m: int) -> "Endomorphism":
        result = Endomorphism.identity(self.field)
        for _ in range(m):
            result = self.compose(result)
        return result

    def is_identity(self) -> bool:
        return self == Endomorphism.identity(self.field)

    def to_json(self) -> dict:
        return {"fx": str(self.fx), "fy": str(self.fy)}

    def __str__(self):
        return f"({self.fx}, {self.fy})"


def apply(e: Endomorphism, p: Polynomial) -> Polynomial:
    return e.apply(p)


def compose(e1: Endomorphism, e2: Endomorphism) -> Endomorphism:
    return e1.compose(e2)


def alpha(M: int, field: Field | str = QQ) -> Endomorphism:
    """``x -> x + y^M, y -> y``."""
    F = field_from_selector(field)
    x, y = Polynomial.var(0, F), Polynomial.var(1, F)
    return Endomorphism(x + y**M, y)


# elementary factors


@dataclass(frozen=True)
class LinearAffine:
    """``x -> a x + b y + e1``, ``y -> c x + d y + e2``; ``matrix = ((a, b), (c, d))``."""

    matrix: tuple
    shift: tuple
    field: Field
    kind = "LinearAffine"

    def __post_init__(self):
        norm = self.field.normalize
        (a, b), (c, d) = self.matrix
        object.__setattr__(self, "matrix", ((norm(a), norm(b)), (norm(c), norm(d))))
        object.__setattr__(self, "shift", tuple(norm(s) for s in self.shift))
        if self.det == 0:
            raise ValueError("LinearAffine needs an invertible matrix")

    @property
    def det(self):
        (a, b), (c, d) = self.matrix
        return self.field.normalize(a * d - b * c)

    def endo(self) -> Endomorphism:
        F = self.field
        x, y = Polynomial.var(0, F), Polynomial.var(1, F)
        (a, b), (c, d) = self.matrix
        return Endomorphism(
            x.scale(a) + y.scale(b) + self.shift[0],
            x.scale(c) + y.scale(d) + self.shift[1],
        )

    def inverse(self) -> "LinearAffine":
        # images are M (x, y) + t, so the inverse is M^-1 (x, y) - M^-1 t
        F = self.field
        (a, b), (c, d) = self.matrix
        di = F.inv(self.det)
        m = ((d * di, -b * di), (-c * di, a * di))
        t0, t1 = self.shift
        s = (-(m[0][0] * t0 + m[0][1] * t1), -(m[1][0] * t0 + m[1][1] * t1))
        return LinearAffine(m, s, F)

    def is_identity(self) -> bool:
        return self.matrix == ((1, 0), (0, 1)) and self.shift == (0, 0)

    def to_json(self) -> dict:
        fmt = self.field.format
        return {
            "kind": self.kind,
            "matrix": [[fmt(v) for v in row] for row in self.matrix],
            "shift": [fmt(v) for v in self.shift],
        }


@dataclass(frozen=True)
class _AddTo:
    h: Polynomial

    letter = 0  # the variable h is written in

    def __post_init__(self):
        if self.h.degree < 2 or self.h.letters() - {self.letter}:
            raise ValueError(f"{self.kind} needs h in one variable with deg(h) >= 2, got {self.h}")

    @property
    def field(self):
        return self.h.field

    def to_json(self) -> dict:
        return {"kind": self.kind, "h": str(self.h)}


@dataclass(frozen=True)
class AddToX(_AddTo):
    """``x -> x + h(y)``."""

    kind = "AddToX"
    letter = 1

    def endo(self) -> Endomorphism:
        F = self.field
        return Endomorphism(Polynomial.var(0, F) + self.h, Polynomial.var(1, F))

    def inverse(self):
        return AddToX(-self.h)


@dataclass(frozen=True)
class AddToY(_AddTo):
    """``y -> y + h(x)``."""

    kind = "AddToY"
    letter = 0

    def endo(self) -> Endomorphism:
        F = self.field
        return Endomorphism(Polynomial.var(0, F), Polynomial.var(1, F) + self.h)

    def inverse(self):
        return AddToY(-self.h)


ElementaryFactor = Union[LinearAffine, AddToX, AddToY]


def recompose(factors, field: Field) -> Endomorphism:
    result = Endomorphism.identity(field)
    for fac in reversed(factors):
        result = fac.endo().compose(result)
    return result


@dataclass
class Decomposition:
    factors: list
    field: Field

    def recompose(self) -> Endomorphism:
        return recompose(self.factors, self.field)

    def to_json(self) -> list:
        return [f.to_json() for f in self.factors]


@dataclass(frozen=True)
class AutomorphismCertificate:
    """State at which degree reduction stopped, and the condition it violates."""

    condition: str
    f: Polynomial
    g: Polynomial

    def verify(self) -> bool:
        """Re-check that ``condition`` literally holds for ``(f, g)``."""
        f, g = self.f, self.g
        if self.condition == "constant image":
            return f.degree < 1 or g.degree < 1
        if f.degree < 1 or g.degree < 1:
            return False
        lo, hi = sorted((f, g), key=lambda p: p.degree)
        if self.condition == "singular linear part":
            return f.degree == g.degree == 1 and _linear_det(f, g) == 0
        if self.condition == "degree divisibility fails":
            return hi.degree % lo.degree != 0
        if self.condition == "leading form not a power":
            if hi.degree % lo.degree:
                return False
            d = hi.degree // lo.degree
            return hi.degree > 1 and _proportion(hi.leading_form(), lo.leading_form() ** d) is None
        return False

    def to_json(self) -> dict:
        return {"condition": self.condition, "f": str(self.f), "g": str(self.g)}


def _linear_det(f, g):
    F = f.field
    return F.normalize(f.coeff((0,)) * g.coeff((1,)) - f.coeff((1,)) * g.coeff((0,)))


def _proportion(a: Polynomial, b: Polynomial):
    """Scalar ``c`` with ``a == c * b`` (both nonzero), else ``None``."""
    if a.terms.keys() != b.terms.keys():
        return None
    w = next(iter(a.terms))
    c = a.field.div(a.terms[w], b.terms[w])
    return c if b.scale(c) == a else None


def _fail(condition, f, g):
    cert = AutomorphismCertificate(condition, f, g)
    err = NotAutomorphism(condition, **cert.to_json())
    err.certificate = cert
    raise err


def _merge(factors, field):
    out = []
    for fac in factors:
        if out and out[-1].kind == fac.kind:
            prev = out.pop()
            if fac.kind == "LinearAffine":
                e = prev.endo().compose(fac.endo())
                merged = _linear_from_endo(e)
            else:
                h = prev.h + fac.h
                merged = type(fac)(h) if h.degree >= 2 else None
                if merged is None:
                    # a cancelled pair folds into nothing or a linear factor
                    e = prev.endo().compose(fac.endo())
                    merged = _linear_from_endo(e)
            if not (merged.kind == "LinearAffine" and merged.is_identity()) or not out:
                out.append(merged)
        else:
            out.append(fac)
    pruned = [f for f in out if not (f.kind == "LinearAffine" and f.is_identity())]
    if not pruned:
        return [LinearAffine(((1, 0), (0, 1)), (0, 0), field)]
    if len(pruned) < len(out):
        # dropping an identity can make two factors of one kind adjacent
        return _merge(pruned, field)
    return out


def _linear_from_endo(e: Endomorphism) -> LinearAffine:
    f, g = e.fx, e.fy
    return LinearAffine(
        ((f.coeff((0,)), f.coeff((1,))), (g.coeff((0,)), g.coeff((1,)))),
        (f.constant_term, g.constant_term),
        e.field,
    )


def decompose_tame(e: Endomorphism) -> Decomposition:
    """Factor ``e`` into elementary automorphisms by degree reduction.

    Raises :class:`NotAutomorphism` carrying an :class:`AutomorphismCertificate`
    when a reduction step is impossible.
    """
    F = e.field
    f, g = e.fx, e.fy
    tail = []
    while True:
        if f.degree < 1 or g.degree < 1:
            _fail("constant image", f, g)
        df, dg = f.degree, g.degree
        if df == dg == 1:
            if _linear_det(f, g) == 0:
                _fail("singular linear part", f, g)
            tail.insert(0, _linear_from_endo(Endomorphism(f, g)))
            break
        reduce_g = df <= dg
        lo, hi = (f, g) if reduce_g else (g, f)
        if hi.degree % lo.degree:
            _fail("degree divisibility fails", f, g)
        d = hi.degree // lo.degree
        c = _proportion(hi.leading_form(), lo.leading_form() ** d)
        if c is None:
            _fail("leading form not a power", f, g)
        hi = hi - (lo**d).scale(c)
        # e = e' o sigma where sigma adds c * (other variable)^d back
        src = 0 if reduce_g else 1
        mono = Polynomial.monomial((src,) * d, c, F)
        if d == 1:
            m = ((1, 0), (c, 1)) if reduce_g else ((1, c), (0, 1))
            fac = LinearAffine(m, (0, 0), F)
        else:
            fac = AddToY(mono) if reduce_g else AddToX(mono)
        tail.insert(0, fac)
        f, g = (lo, hi) if reduce_g else (hi, lo)
    dec = Decomposition(_merge(tail, F), F)
    assert dec.recompose() == e, "decomposition does not recompose"
    return dec


def is_automorphism(e: Endomorphism) -> bool:
    try:
        decompose_tame(e)
    except NotAutomorphism:
        return False
    return True


def invert(e: Endomorphism) -> Endomorphism:
    dec = decompose_tame(e)
    inv = recompose([f.inverse() for f in reversed(dec.factors)], e.field)
    return inv


def check_inverse(e: Endomorphism, inv: Endomorphism, dec: Optional[Decomposition] = None) -> bool:
    """Exact check of ``e o inv == id == inv o e``.

    Expanding ``e o inv`` directly multiplies degrees, so the two products are
    evaluated one elementary factor at a time instead:
    ``((e o F_k^-1) o ...) o F_1^-1`` and ``((inv o F_1) o ...) o F_k``.
    Every intermediate is itself a partial product of lower degree, and by
    associativity the final values are exactly ``e o inv`` and ``inv o e``.
    """
    dec = dec or decompose_tame(e)
    if recompose([f.inverse() for f in reversed(dec.factors)], e.field) != inv:
        return False
    left = e
    for f in reversed(dec.factors):
        left = left.compose(f.inverse().endo())
    right = inv
    for f in dec.factors:
        right = right.compose(f.endo())
    return left.is_identity() and right.is_identity()


# random tame automorphisms


def random_elementary(rng: random.Random, field: Field, max_h_degree: int = 3):
    kind = rng.choice(["LinearAffine", "AddToX", "AddToY"])
    if kind == "LinearAffine":
        while True:
            m = tuple(tuple(_rand_scalar(rng, field, allow_zero=True) for _ in range(2)) for _ in range(2))
            if field.normalize(m[0][0] * m[1][1] - m[0][1] * m[1][0]) != 0:
                break
        shift = (_rand_scalar(rng, field, True), _rand_scalar(rng, field, True))
        return LinearAffine(m, shift, field)
    letter = 1 if kind == "AddToX" else 0
    top = rng.randint(2, max_h_degree)
    terms = {(letter,) * top: _rand_scalar(rng, field)}
    for d in range(2, top):
        if rng.random() < 0.5:
            terms[(letter,) * d] = _rand_scalar(rng, field)
    h = Polynomial(terms, field)
    return AddToX(h) if kind == "AddToX" else AddToY(h)


def _rand_scalar(rng, field, allow_zero=False):
    while True:
        if field.characteristic:
            c = rng.randrange(field.characteristic)
        else:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        if allow_zero or c != 0:
            return field.normalize(c)


def random_tame(rng: random.Random, field: Field, n_factors: int, max_degree: int = 8):
    """Random factor list of length ``n_factors`` whose degree product stays
    within ``max_degree``; returns ``(factors, endomorphism)``."""
    factors = []
    budget = max_degree
    for _ in range(n_factors):
        cap = min(3, budget)
        fac = random_elementary(rng, field, cap) if cap >= 2 else None
        if fac is None or fac.kind == "LinearAffine":
            fac = fac or random_elementary_linear(rng, field)
        else:
            budget //= fac.h.degree
        factors.append(fac)
    return factors, recompose(factors, field)


def random_elementary_linear(rng, field):
    while True:
        fac = random_elementary(rng, field, 2)
        if fac.kind == "LinearAffine":
            return fac


# coordinates


@dataclass
class CoordinateCertificate:
    p: Polynomial
    q: Polynomial
    decomposition: Decomposition
    moves: list  # elementary factors applied to p, first move first

    def to_json(self) -> dict:
        return {
            "p": str(self.p),
            "q": str(self.q),
            "decomposition": self.decomposition.to_json(),
            "moves": [m.to_json() for m in self.moves],
        }


def _normalize_leading(p: Polynomial):
    """Linear move sending the linear form under ``v(p) = c*l^n`` to ``x``."""
    from .estimate import _linear_power_form

    F = p.field
    got = _linear_power_form(p.leading_form())
    if got is None:
        return None
    _, beta = got
    if beta is None:
        return LinearAffine(((0, 1), (1, 0)), (0, 0), F)
    if beta == 0:
        return LinearAffine(((1, 0), (0, 1)), (0, 0), F)
    return LinearAffine(((1, F.normalize(-beta)), (0, 1)), (0, 0), F)


def coordinate_certify(p: Polynomial, search_bound: Optional[int] = None) -> CoordinateCertificate:
    """Search for ``q`` making ``(p, q)`` an automorphism.

    Greedy degree reduction by elementary substitutions into ``p``.  This is a
    semi-decision: :class:`NoCertificateWithinBounds` does not prove that ``p``
    is not a coordinate.
    """
    if p.degree < 1:
        raise ConstantInput("constant polynomial cannot be a coordinate")
    F = p.field
    bound = p.degree if search_bound is None else search_bound
    cur = p
    moves = []
    while cur.degree > 1:
        n = cur.degree
        lin = _normalize_leading(cur)
        if lin is None:
            raise NoCertificateWithinBounds(
                "leading form is not a power of a linear form", state=str(cur), bound=bound
            )
        base = lin.endo().apply(cur)
        c = base.coeff((0,) * n)
        step = None
        for e in range(2, min(n, bound) + 1):
            for word in ((1,) + (0,) * (n - e), (0,) * (n - e) + (1,)):
                B = base.coeff(word)
                if B == 0:
                    continue
                a = F.normalize(-c * F.inv(B))
                mv = AddToY(Polynomial.monomial((0,) * e, a, F))
                cand = mv.endo().apply(base)
                if cand.degree < n:
                    step = (mv, cand)
                    break
            if step:
                break
        if step is None:
            raise NoCertificateWithinBounds(
                f"no elementary move of degree <= {bound} lowers deg {n}",
                state=str(cur),
                bound=bound,
            )
        if not lin.is_identity():
            moves.append(lin)
        moves.append(step[0])
        cur = step[1]
    a = cur.coeff((0,))
    y, x = Polynomial.var(1, F), Polynomial.var(0, F)
    q_lin = y if a != 0 else x
    # cur = tau(p) with tau = moves[-1] o ... o moves[0]; pull q back through tau^-1
    tau_inv = recompose([m.inverse() for m in moves], F)
    q = tau_inv.apply(q_lin)
    dec = decompose_tame(Endomorphism(p, q))
    return CoordinateCertificate(p, q, dec, moves)


# retractions


@dataclass(frozen=True)
class Retraction:
    endo: Endomorphism
    generator: Optional[Polynomial] = None


def is_retraction(e: Endomorphism) -> bool:
    return e.compose(e) == e


@dataclass(frozen=True)
class IterationResult:
    m: int
    retraction: Endomorphism


def iterate_to_retraction(
    e: Endomorphism, p: Polynomial, max_iter: int = 16, max_degree: int = 64
) -> IterationResult:
    """Smallest ``m <= max_iter`` with ``e^m`` idempotent.

    Failure to converge says nothing about injectivity of ``e``.
    """
    if e.apply(p) != p:
        raise NotFixing("e(p) != p", p=str(p))
    cur = e
    for m in range(1, max_iter + 1):
        if is_retraction(cur):
            return IterationResult(m, cur)
        cur = e.compose(cur)
        if max(cur.fx.degree, cur.fy.degree) > max_degree:
            raise NoConvergence(f"degree exceeded {max_degree} at power {m + 1}", m=m + 1)
    raise NoConvergence(f"no idempotent power up to {max_iter}", max_iter=max_iter)


def express_in(q: Polynomial, r: Polynomial):
    """Coefficients ``[c0, c1, ...]`` with ``q == sum c_i r^i``, or ``None``."""
    F = q.field
    dr = r.degree
    if dr < 1:
        return None
    coeffs = {}
    cur = q
    lead = r.leading_form()
    while cur.degree >= 1:
        if cur.degree % dr:
            return None
        d = cur.degree // dr
        c = _proportion(cur.leading_form(), lead**d)
        if c is None:
            return None
        coeffs[d] = c
        cur = cur - (r**d).scale(c)
    coeffs[0] = cur.constant_term
    top = max(coeffs)
    return [coeffs.get(i, F.zero) for i in range(top + 1)]


def _normalized(r: Polynomial) -> Polynomial:
    r = r.without_constant()
    return r.scale(r.field.inv(r.leading_coeff()))


def retract_generator(ret: Union[Retraction, Endomorphism], require_idempotent: bool = False) -> Polynomial:
    """Generator ``r`` (monic, no constant term) with both images in ``K[r]``.

    Found by subduction of the two images against each other.  Idempotence is
    only enforced with ``require_idempotent``; commuting images are enough for
    the subduction itself.
    """
    e = ret.endo if isinstance(ret, Retraction) else ret
    if e.is_identity():
        raise NotARetraction("the identity is not a proper retraction")
    if require_idempotent and not is_retraction(e):
        raise NotARetraction("endomorphism is not idempotent")
    gens = [im.without_constant() for im in (e.fx, e.fy)]
    gens = [gn for gn in gens if not gn.is_zero()]
    if not gens:
        raise NotARetraction("both images are constant")
    while len(gens) > 1:
        gens.sort(key=lambda p: p.degree)
        a, b = gens
        if b.degree % a.degree:
            raise ProperSubductionFailure(
                "degrees do not divide", a=str(a), b=str(b)
            )
        d = b.degree // a.degree
        c = _proportion(b.leading_form(), a.leading_form() ** d)
        if c is None:
            raise ProperSubductionFailure("leading form is not a power", a=str(a), b=str(b))
        b = (b - (a**d).scale(c)).without_constant()
        gens = [a] if b.is_zero() else [a, b]
    r = _normalized(gens[0])
    for im in (e.fx, e.fy):
        if express_in(im, r) is None:
            raise ProperSubductionFailure("image not in K[r]", image=str(im), r=str(r))
    return r


@dataclass(frozen=True)
class OrbitWitness:
    M: int
    value: Polynomial
    deg_r: Fraction
    variant: str  # "x+y^M" or "y+x^M"

    def to_json(self) -> dict:
        return {"M": self.M, "value": str(self.value), "deg_r": str(self.deg_r), "variant": self.variant}


def orbit_witness(ret: Union[Retraction, Endomorphism], r: Polynomial, cap: Optional[int] = None, doublings: int = 3) -> OrbitWitness:
    """Least ``M`` with ``deg_r(ret(alpha_M(r))) > 1``.

    ``alpha_M`` is ``x -> x + y^M`` when the y-image of ``ret`` is nonconstant
    and ``r`` involves x; otherwise the mirrored ``y -> y + x^M``.
    """
    e = ret.endo if isinstance(ret, Retraction) else ret
    F = e.field
    if r.degree < 1:
        raise PreconditionFailed("r must be nonconstant")
    if not is_retraction(e):
        raise PreconditionFailed("not a retraction")
    if e.apply(r) != r:
        raise PreconditionFailed("retraction does not fix r")
    x, y = Polynomial.var(0, F), Polynomial.var(1, F)
    letters = r.letters()
    if e.fy.degree >= 1 and 0 in letters:
        variant, make = "x+y^M", lambda M: Endomorphism(x + y**M, y)
    elif e.fx.degree >= 1 and 1 in letters:
        variant, make = "y+x^M", lambda M: Endomorphism(x, y + x**M)
    else:
        raise PreconditionFailed(
            "no nonconstant image acts on a letter of r", r=str(r), endo=str(e)
        )
    if cap is None:
        cap = max(e.fx.degree, e.fy.degree) + r.degree + 2
    M = 0
    for _ in range(doublings + 1):
        while M <= cap:
            val = e.apply(make(M).apply(r))
            deg_r = Fraction(val.degree, r.degree) if not val.is_zero() else Fraction(0)
            if deg_r > 1:
                return OrbitWitness(M, val, deg_r, variant)
            M += 1
        cap *= 2
    raise CapExceeded(f"no M <= {cap // 2} separates the orbit", cap=cap // 2)
