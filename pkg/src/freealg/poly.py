"""Sparse polynomials in the free associative algebra K<x_1, ..., x_n>.

A word is a tuple of 0-based letter indices; the empty tuple is the unit
monomial.  A :class:`Polynomial` maps words to nonzero raw field scalars.
Letters ``0`` and ``1`` print as ``x`` and ``y`` in the rank-two case.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import AlphabetMismatch, ArityMismatch, BadWeights, ZeroPolynomial
from .fields import QQ, Field, FieldElem, check_same, field_from_selector

Word = tuple

NEG_INF = float("-inf")


def deglex_key(word: Word):
    return (len(word), word)


class Polynomial:
    """Immutable sparse element of K<x_1..x_n>."""

    __slots__ = ("terms", "field", "nvars", "_hash")

    def __init__(self, terms=None, field: Field | str = QQ, nvars: int = 2):
        field = field_from_selector(field)
        clean = {}
        if terms:
            norm = field.normalize
            for w, c in terms.items():
                c = norm(c)
                if c != 0:
                    clean[tuple(w)] = c
        self.terms = clean
        self.field = field
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms, field, nvars):
        # terms already canonical and zero-free
        p = object.__new__(cls)
        p.terms = terms
        p.field = field
        p.nvars = nvars
        p._hash = None
        return p

    # constructors

    @classmethod
    def zero(cls, field=QQ, nvars=2):
        return cls({}, field, nvars)

    @classmethod
    def constant(cls, c, field=QQ, nvars=2):
        return cls({(): c}, field, nvars)

    @classmethod
    def one(cls, field=QQ, nvars=2):
        return cls.constant(1, field, nvars)

    @classmethod
    def var(cls, i: int, field=QQ, nvars=2):
        return cls({(i,): 1}, field, nvars)

    @classmethod
    def monomial(cls, word: Iterable[int], coeff=1, field=QQ, nvars=2):
        return cls({tuple(word): coeff}, field, nvars)

    def _like(self, terms):
        return Polynomial._raw(terms, self.field, self.nvars)

    def _check(self, other: "Polynomial"):
        check_same(self.field, other.field)
        if self.nvars != other.nvars:
            raise AlphabetMismatch(f"{self.nvars} vs {other.nvars} letters")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, FieldElem):
            check_same(self.field, other.field)
            other = other.value
        return Polynomial.constant(other, self.field, self.nvars)

    # ring operations

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        norm = self.field.normalize
        for w, c in other.terms.items():
            v = norm(out.get(w, 0) + c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.field.normalize
        return self._like({w: norm(-c) for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict = {}
        get = acc.get
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc[w] = get(w, 0) + c1 * c2
        norm = self.field.normalize
        out = {}
        for w, c in acc.items():
            c = norm(c)
            if c:
                out[w] = c
        return self._like(out)

    def __rmul__(self, other):
        # scalar * poly; poly * poly is always dispatched to __mul__
        return self._coerce(other) * self

    def scale(self, c):
        if isinstance(c, FieldElem):
            check_same(self.field, c.field)
            c = c.value
        norm = self.field.normalize
        c = norm(c)
        if c == 0:
            return self._like({})
        return self._like({w: norm(v * c) for w, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power in the free algebra")
        result = Polynomial.one(self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (
                self.nvars == other.nvars
                and (self.field is other.field or self.field == other.field)
                and self.terms == other.terms
            )
        if isinstance(other, (int, FieldElem)) or hasattr(other, "numerator"):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.selector, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        from .parsing import print_poly

        return f"Polynomial({print_poly(self)!r}, {self.field.selector})"

    def __str__(self):
        from .parsing import print_poly

        return print_poly(self)

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(len(w) for w in self.terms)

    def is_constant(self) -> bool:
        return all(len(w) == 0 for w in self.terms)

    def coeff(self, word: Sequence[int]):
        return self.terms.get(tuple(word), 0)

    @property
    def constant_term(self):
        return self.terms.get((), 0)

    def without_constant(self) -> "Polynomial":
        return self._like({w: c for w, c in self.terms.items() if w})

    def homogeneous_part(self, d: int) -> "Polynomial":
        return self._like({w: c for w, c in self.terms.items() if len(w) == d})

    def leading_form(self) -> "Polynomial":
        if not self.terms:
            raise ZeroPolynomial("leading form of 0")
        return self.homogeneous_part(self.degree)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def leading_word(self) -> Word:
        """Largest word in deglex order."""
        if not self.terms:
            raise ZeroPolynomial("leading word of 0")
        return max(self.terms, key=deglex_key)

    def leading_coeff(self):
        return self.terms[self.leading_word()]

    def sorted_terms(self, reverse=True):
        return sorted(self.terms.items(), key=lambda t: deglex_key(t[0]), reverse=reverse)

    def letters(self) -> set:
        return {a for w in self.terms for a in w}

    def weighted_degree(self, weights: Sequence[int]):
        if len(weights) != self.nvars or any(int(x) < 1 for x in weights):
            raise BadWeights(f"need {self.nvars} weights >= 1, got {list(weights)}")
        if not self.terms:
            return NEG_INF
        return max(sum(weights[a] for a in w) for w in self.terms)

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace letter ``i`` by ``images[i]``; a ring homomorphism."""
        return substitute(self, images)


def commutator(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b - b * a


def degree(a: Polynomial):
    return a.degree


def leading_form(a: Polynomial) -> Polynomial:
    return a.leading_form()


def weighted_degree(a: Polynomial, weights: Sequence[int]):
    return a.weighted_degree(weights)


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def substitute(P: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    if len(images) != P.nvars:
        raise ArityMismatch(f"{P.nvars} images expected, got {len(images)}")
    images = list(images)
    target = images[0] if images else P
    for im in images[1:]:
        target._check(im)
    check_same(P.field, target.field)
    one = Polynomial.one(target.field, target.nvars)
    # prefix products are shared across words
    cache = {(): one}

    def value(word):
        got = cache.get(word)
        if got is None:
            got = value(word[:-1]) * images[word[-1]]
            cache[word] = got
        return got

    acc: dict = {}
    for w, c in sorted(P.terms.items(), key=lambda t: deglex_key(t[0])):
        for w2, c2 in value(w).terms.items():
            acc[w2] = acc.get(w2, 0) + c * c2
    return Polynomial(acc, target.field, target.nvars)


def x(field=QQ) -> Polynomial:
    return Polynomial.var(0, field)


def y(field=QQ) -> Polynomial:
    return Polynomial.var(1, field)


def word_power(word: Word, k: int) -> Word:
    return tuple(word) * k


def has_mixed_monomial(p: Polynomial) -> bool:
    """True when some word of ``p`` uses at least two distinct letters."""
    return any(len(set(w)) >= 2 for w in p.terms)
