"""Monomials of K<x, y> as a bimodule over K[u], and the equation
``[u^m, s] + [u^n, r] = 0``.

For a primitive word ``u``, a monomial generator ``t`` is one of

* ``Type1``: ``t = 1``;
* ``Type3``: ``t`` overlaps ``u`` so that ``t1 u = u t2`` with
  ``u = (v1 v2)^k v1``, ``t1 = v1 v2`` and ``t2 = v2 v1``;
* ``Type2``: everything else (no head/tail relation with ``u``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Optional

from .errors import BadBound, ImprimitiveU, ZeroInput
from .fields import Field, GF
from .linalg import kernel, solve
from .parsing import format_word
from .poly import Polynomial, commutator

Word = tuple


def is_primitive(u: Word) -> bool:
    """``u`` is a proper power iff it occurs in ``uu`` away from offsets 0 and |u|."""
    if not u:
        return False
    uu = u + u
    n = len(u)
    return not any(uu[i : i + n] == u for i in range(1, n))


@dataclass(frozen=True)
class MonomialClass:
    kind: str
    v1: Optional[Word] = None
    v2: Optional[Word] = None
    k: Optional[int] = None
    t1: Optional[Word] = None
    t2: Optional[Word] = None

    def verify(self, u: Word) -> bool:
        if self.kind != "Type3":
            return True
        v1, v2 = self.v1, self.v2
        return (
            u == (v1 + v2) * self.k + v1
            and self.t1 == v1 + v2
            and self.t2 == v2 + v1
            and v1 + v2 != v2 + v1
            and self.t1 + u == u + self.t2
        )

    def to_json(self, names=None) -> dict:
        out = {"kind": self.kind}
        if self.kind == "Type3":
            fmt = lambda w: format_word(w, names)
            out.update(v1=fmt(self.v1), v2=fmt(self.v2), k=self.k, t1=fmt(self.t1), t2=fmt(self.t2))
        return out


def _type3(u: Word, t1: Word, t2: Word) -> MonomialClass:
    p = len(t1)
    k = len(u) // p
    v1 = u[k * p :]
    v2 = t1[len(v1) :]
    cls = MonomialClass("Type3", v1, v2, k, t1, t2)
    # the overlap together with primitivity of u forces all invariants
    assert cls.verify(u), (u, t1, t2)
    return cls


def classify_monomial(u: Word, t: Word) -> MonomialClass:
    """Classify the generator ``t`` relative to the primitive word ``u``.

    ``t`` is tested both as a head ``t1`` (with ``t2`` the tail of the same
    length) and as a tail ``t2`` (with ``t1`` the matching head).
    """
    u, t = tuple(u), tuple(t)
    if not is_primitive(u):
        raise ImprimitiveU(f"u = {format_word(u)} is empty or a proper power", u=format_word(u))
    if not t:
        return MonomialClass("Type1")
    p = len(t)
    if p < len(u):
        head, tail = u[:p], u[-p:]
        if head + u == u + tail:
            if t == head:
                return _type3(u, t, tail)
            if t == tail:
                return _type3(u, head, t)
    return MonomialClass("Type2")


# the commutator equation


def _words_upto(bound: int):
    out = []
    for d in range(bound + 1):
        out.extend(product((0, 1), repeat=d))
    return out


@dataclass
class CommutatorEqSolution:
    u: Word
    m: int
    n: int
    bound: int
    field: Field
    basis: list  # of (s, r) polynomial pairs

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def residual(self, s: Polynomial, r: Polynomial) -> Polynomial:
        um = Polynomial.monomial(self.u * self.m, 1, self.field)
        un = Polynomial.monomial(self.u * self.n, 1, self.field)
        return commutator(um, s) + commutator(un, r)

    def vector(self, s: Polynomial, r: Polynomial) -> list:
        words = _words_upto(self.bound)
        return [s.coeff(w) for w in words] + [r.coeff(w) for w in words]

    def contains(self, s: Polynomial, r: Polynomial) -> bool:
        """Whether ``(s, r)`` lies in the span of the basis."""
        if max(s.degree, r.degree) > self.bound:
            return False
        target = self.vector(s, r)
        if not self.basis:
            return all(c == 0 for c in target)
        cols = [self.vector(a, b) for a, b in self.basis]
        rows = [[col[i] for col in cols] for i in range(len(target))]
        return solve(rows, target, len(cols), self.field) is not None

    def to_json(self, names=None) -> dict:
        return {
            "u": format_word(self.u, names),
            "m": self.m,
            "n": self.n,
            "bound": self.bound,
            "field": self.field.selector,
            "dimension": self.dimension,
            "basis": [{"s": str(s), "r": str(r)} for s, r in self.basis],
        }


def solve_commutator_equation(
    u, m: int, n: int, degree_bound: int, field: Field | None = None
) -> CommutatorEqSolution:
    """Kernel of ``(s, r) -> [u^m, s] + [u^n, r]`` on ``deg s, deg r <= degree_bound``."""
    if isinstance(u, Polynomial):
        if len(u.terms) != 1:
            raise ZeroInput("u must be a single word", terms=len(u.terms))
        field = field or u.field
        (u,) = u.terms
    u = tuple(u)
    field = field or GF(2)
    if not u:
        raise ZeroInput("u must be a nonempty word")
    if m < 1 or n < 1:
        raise BadBound(f"m and n must be positive (got {m}, {n})", m=m, n=n)
    if degree_bound < 0:
        raise BadBound(f"degree bound must be >= 0, got {degree_bound}", bound=degree_bound)
    words = _words_upto(degree_bound)
    nw = len(words)
    columns = []  # sparse images of each unknown
    for j, w in enumerate(words):
        columns.append(_comm_word(u * m, w))
    for w in words:
        columns.append(_comm_word(u * n, w))
    row_words = sorted({rw for col in columns for rw in col})
    index = {rw: i for i, rw in enumerate(row_words)}
    A = [[0] * (2 * nw) for _ in row_words]
    for j, col in enumerate(columns):
        for rw, c in col.items():
            A[index[rw]][j] = c
    basis = []
    for vec in kernel(A, 2 * nw, field):
        s = Polynomial({w: vec[i] for i, w in enumerate(words)}, field)
        r = Polynomial({w: vec[nw + i] for i, w in enumerate(words)}, field)
        basis.append((s, r))
    sol = CommutatorEqSolution(u, m, n, degree_bound, field, basis)
    for s, r in basis:
        if not sol.residual(s, r).is_zero():
            raise AssertionError("kernel vector fails re-substitution")
    return sol


def _comm_word(a: Word, w: Word) -> dict:
    out = {}
    out[a + w] = out.get(a + w, 0) + 1
    out[w + a] = out.get(w + a, 0) - 1
    return {k: v for k, v in out.items() if v}


def trivial_solutions(u: Word, m: int, n: int, bound: int, field: Field) -> list:
    """Commuting pairs in ``K[u]`` and the Jacobi family ``([u^n, w], -[u^m, w])``
    that fit inside the degree bound."""
    u = tuple(u)
    um = Polynomial.monomial(u * m, 1, field)
    un = Polynomial.monomial(u * n, 1, field)
    zero = Polynomial.zero(field)
    out = []
    j = 0
    while j * len(u) <= bound:
        p = Polynomial.monomial(u * j, 1, field)
        out.append((p, zero))
        out.append((zero, p))
        j += 1
    for w in _words_upto(bound):
        wp = Polynomial.monomial(w, 1, field)
        s, r = commutator(un, wp), -commutator(um, wp)
        if max(s.degree, r.degree) <= bound:
            out.append((s, r))
    return out


def _telescope(a: Polynomial, k: int, w: Polynomial) -> Polynomial:
    """``T_k(w) = sum_{i<k} a^i w a^(k-1-i)``, so ``[a, T_k(w)] = [a^k, w]``."""
    t = Polynomial.zero(w.field)
    for i in range(k):
        t = t + a**i * w * a ** (k - 1 - i)
    return t


def telescoping_solutions(u: Word, m: int, n: int, bound: int, field: Field) -> list:
    """Pairs ``(T_{n/d}(w), -T_{m/d}(w))`` over the base ``a = u^d``, ``d = gcd(m, n)``.

    With ``T_k`` taken over ``a``, ``[a^k, s] = [a, T_k(s)]`` and the ``T_k``
    commute, so ``[u^m, T_{n/d}(w)] = [a, T_{m/d} T_{n/d}(w)] = [u^n, T_{m/d}(w)]``.
    The Jacobi pairs are the images of these under ``w -> [a, w]``.
    """
    d = gcd(m, n)
    a = Polynomial.monomial(tuple(u) * d, 1, field)
    out = []
    for w in _words_upto(bound):
        wp = Polynomial.monomial(w, 1, field)
        s, r = _telescope(a, n // d, wp), -_telescope(a, m // d, wp)
        if max(s.degree, r.degree) <= bound:
            out.append((s, r))
    return out
