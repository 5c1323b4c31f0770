"""Truncated Mal'tsev-Neumann series over the free group on x, y.

Group words are freely reduced tuples of signed letters: ``+1``/``-1`` for
``x``/``x^-1`` and ``+2``/``-2`` for ``y``/``y^-1``.  The degree of a word is
its exponent sum.

A :class:`TruncatedSeries` stores finitely many terms plus a *floor*: every
term of degree ``>= floor`` is exact, anything below is unknown and dropped.
Genuine series have well-ordered, usually infinite, support; only a verified
window of it is representable here, and the floor keeps every claim about that
window checkable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Optional

from .errors import (
    BadK,
    BasisExhausted,
    CharDividesN,
    FloorCollapse,
    InsufficientFloor,
    NotAnNthPowerLeading,
    NotASquareLeading,
    ParseError,
)
from .fields import GF, Field, check_same, field_from_selector
from .linalg import solve
from .poly import NEG_INF, Polynomial

GroupWord = tuple

_NAMES = {1: "x", 2: "y"}


def gw_reduce(letters) -> GroupWord:
    out = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def gw_mul(a: GroupWord, b: GroupWord) -> GroupWord:
    """Concatenate two reduced words and cancel at the junction."""
    i = 0
    n = min(len(a), len(b))
    while i < n and a[-1 - i] == -b[i]:
        i += 1
    return a[: len(a) - i] + b[i:]


def gw_inv(a: GroupWord) -> GroupWord:
    return tuple(-c for c in reversed(a))


@lru_cache(maxsize=1 << 16)
def gw_degree(a: GroupWord) -> int:
    return sum(1 if c > 0 else -1 for c in a)


def gw_pow(a: GroupWord, n: int) -> GroupWord:
    if n < 0:
        a, n = gw_inv(a), -n
    out: GroupWord = ()
    for _ in range(n):
        out = gw_mul(out, a)
    return out


def gw_has_inverse(a: GroupWord) -> bool:
    return any(c < 0 for c in a)


def gw_from_word(word) -> GroupWord:
    """Embed a free-monoid word (0-based letters) into the free group."""
    return tuple(c + 1 for c in word)


def gw_sort_key(a: GroupWord):
    # letter order x < x^-1 < y < y^-1
    return tuple(2 * (abs(c) - 1) + (c < 0) for c in a)


def format_group_word(a: GroupWord) -> str:
    if not a:
        return "1"
    parts = []
    i = 0
    while i < len(a):
        j = i
        while j < len(a) and a[j] == a[i]:
            j += 1
        name = _NAMES.get(abs(a[i]), f"x{abs(a[i])}")
        e = (j - i) * (1 if a[i] > 0 else -1)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


def gw_root(W: GroupWord, n: int) -> Optional[GroupWord]:
    """The unique ``w`` with ``w^n == W`` in the free group, if any."""
    i = 0
    while 2 * i + 1 < len(W) and W[i] == -W[-1 - i]:
        i += 1
    conj, core = W[:i], W[i : len(W) - i]
    if len(core) % n:
        return None
    v = core[: len(core) // n]
    if v * n != core:
        return None
    return gw_mul(gw_mul(conj, v), gw_inv(conj))


class TruncatedSeries:
    """Finite window of a Mal'tsev-Neumann series with an exactness floor."""

    __slots__ = ("terms", "field", "floor")

    def __init__(self, terms=None, field: Field | str = GF(2), floor=NEG_INF):
        F = field_from_selector(field)
        clean = {}
        for w, c in (terms or {}).items():
            c = F.normalize(c)
            if c != 0 and gw_degree(w) >= floor:
                clean[w] = c
        self.terms = clean
        self.field = F
        self.floor = floor

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "TruncatedSeries":
        return cls({gw_from_word(w): c for w, c in p.terms.items()}, p.field)

    @property
    def top(self):
        if not self.terms:
            return NEG_INF
        return max(gw_degree(w) for w in self.terms)

    def is_exact(self) -> bool:
        return self.floor == NEG_INF

    def slice(self, d: int) -> dict:
        return {w: c for w, c in self.terms.items() if gw_degree(w) == d}

    def degrees(self) -> list:
        return sorted({gw_degree(w) for w in self.terms}, reverse=True)

    def truncate(self, floor) -> "TruncatedSeries":
        return TruncatedSeries(self.terms, self.field, max(self.floor, floor))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        check_same(self.field, other.field)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return TruncatedSeries(out, self.field, max(self.floor, other.floor))

    def __neg__(self):
        return TruncatedSeries({w: -c for w, c in self.terms.items()}, self.field, self.floor)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncatedSeries":
        return TruncatedSeries({w: v * c for w, v in self.terms.items()}, self.field, self.floor)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 1:
            raise ValueError("only positive powers of a series")
        result = self
        for _ in range(n - 1):
            result = series_mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.terms == other.terms and self.floor == other.floor and self.field == other.field

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda t: (gw_degree(t[0]), gw_sort_key(t[0])), reverse=True
        )

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            s = format_group_word(w)
            parts.append(s if c == 1 else f"{self.field.format(c)}*{s}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncatedSeries({str(self)!r}, floor={self.floor})"

    def to_json(self) -> dict:
        return {
            "field": self.field.selector,
            "floor": "-inf" if self.floor == NEG_INF else self.floor,
            "terms": [
                [format_group_word(w), self.field.format(c), gw_degree(w)]
                for w, c in self.sorted_terms()
            ],
        }


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product with conservative floor ``max(a.floor + b.top, b.floor + a.top)``."""
    F = check_same(a.field, b.field)
    floor = max(a.floor + b.top, b.floor + a.top)
    acc: dict = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            w = gw_mul(w1, w2)
            acc[w] = acc.get(w, 0) + c1 * c2
    out = TruncatedSeries(acc, F, floor)
    if floor != NEG_INF and a.terms and b.terms and not out.terms:
        raise FloorCollapse("no exact term survives the product floor", floor=floor)
    return out


def parse_series(text: str, field: Field | str = GF(2)) -> TruncatedSeries:
    """Parse ``c*x^2*y^-1*x + y + ...``; exponents may be negative."""
    F = field_from_selector(field)
    src = text.replace(" ", "")
    if not src:
        raise ParseError("empty series", 0, text)
    terms: dict = {}
    pos = 0
    # a sign starts a new term unless it follows '^'
    for chunk in re.split(r"(?<!\^)(?=[+-])", src):
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:] if chunk[0] in "+-" else chunk
        offset = pos + len(chunk) - len(body)
        if not body:
            raise ParseError("dangling sign", pos, text)
        coeff = sign
        letters = []
        for fac in body.split("*"):
            fm = re.fullmatch(r"(\d+)|([xy])(?:\^(-?\d+))?", fac)
            if fm is None or (fm.group(3) is not None and int(fm.group(3)) == 0):
                raise ParseError(f"bad factor {fac!r}", offset, text)
            offset += len(fac) + 1
            if fm.group(1):
                coeff *= int(fm.group(1))
                continue
            e = int(fm.group(3) or 1)
            letter = 1 if fm.group(2) == "x" else 2
            letters.extend([letter if e > 0 else -letter] * abs(e))
        w = gw_reduce(letters)
        terms[w] = terms.get(w, 0) + coeff
        pos += len(chunk)
    return TruncatedSeries(terms, F)


# roots


def _slice_operator(w: GroupWord, b, n: int):
    """Words and scale of ``c -> sum_i (b w)^i c (b w)^(n-1-i)`` on a word."""
    pw = [gw_pow(w, i) for i in range(n)]

    def image(beta):
        out = {}
        for i in range(n):
            word = gw_mul(gw_mul(pw[i], beta), pw[n - 1 - i])
            out[word] = out.get(word, 0) + 1
        return out

    return image


def _candidates(w, n, words):
    inv = [gw_pow(w, -i) for i in range(n)]
    return {gw_mul(gw_mul(inv[i], m), inv[n - 1 - i]) for m in words for i in range(n)}


def sqrt_obstruction(w: GroupWord, rhs: dict, field: Field) -> list:
    """Conjugation orbits that block a finite solution of ``w c + c w = rhs``.

    Writing ``beta = w a`` turns ``w a + a w`` into ``beta + w^-1 beta w``, so a
    finite ``rhs`` is reachable iff along every infinite orbit of
    ``beta -> w^-1 beta w`` the alternating coefficient sum vanishes, and (in
    characteristic 2) words commuting with ``w`` carry coefficient zero.
    Returns the offending orbit representatives; empty means no obstruction.
    """
    wi = gw_inv(w)
    remaining = dict(rhs)
    bad = []
    while remaining:
        rep, c0 = remaining.popitem()
        conj = gw_mul(gw_mul(wi, rep), w)
        if conj == rep:
            if field.characteristic == 2 and field.normalize(c0) != 0:
                bad.append(rep)
            continue
        total = c0
        span = len(rep) + max((len(k) for k in remaining), default=0) + 2
        for direction, step in ((1, (wi, w)), (-1, (w, wi))):
            cur = rep
            for j in range(1, span + 1):
                cur = gw_mul(gw_mul(step[0], cur), step[1])
                if cur in remaining:
                    total += (-1) ** j * remaining.pop(cur)
        if field.normalize(total) != 0:
            bad.append(rep)
    return bad


@dataclass
class RootResult:
    root: TruncatedSeries
    leading_word: GroupWord
    steps: int
    residual: TruncatedSeries


def _root_engine(g: TruncatedSeries, n: int, window: int, basis_rounds: int, square_error):
    F = g.field
    if not g.terms:
        raise square_error("zero series has no leading word")
    top = g.top
    lead = g.slice(top)
    if len(lead) != 1:
        raise square_error("leading slice is not a single word", words=[format_group_word(w) for w in lead])
    (W, a), = lead.items()
    w = gw_root(W, n)
    b = F.nth_root(a, n)
    if w is None or b is None:
        raise square_error(
            f"leading term is not an {n}-th power", word=format_group_word(W), coeff=F.format(a)
        )
    if g.floor > -window:
        raise InsufficientFloor(
            f"input exact only down to {g.floor}; need {-window}", floor=g.floor, required_floor=-window
        )
    image = _slice_operator(w, b, n)
    scale = F.normalize(b ** (n - 1))
    h = {w: b}
    steps = 0
    while True:
        hs = TruncatedSeries(h, F)
        res = g - hs**n
        live = {u: c for u, c in res.terms.items() if gw_degree(u) >= -window}
        if not live:
            break
        D = max(gw_degree(u) for u in live)
        rhs = {u: c for u, c in live.items() if gw_degree(u) == D}
        c = _solve_slice(w, n, rhs, image, scale, F, basis_rounds)
        if c is None:
            ctx = dict(
                degree=D,
                slice=[[format_group_word(u), F.format(v)] for u, v in sorted(rhs.items(), key=lambda t: gw_sort_key(t[0]))],
                basis_rounds=basis_rounds,
                window_reached=-(D + 1) if D < 0 else None,
            )
            if n == 2:
                obs = sqrt_obstruction(w, rhs, F)
                ctx["no_finite_solution"] = bool(obs)
                ctx["obstructing_orbits"] = [format_group_word(u) for u in obs]
            err = BasisExhausted(f"slice at degree {D} unsolvable on candidate basis", **ctx)
            err.partial = TruncatedSeries(h, F, floor=D - (n - 1) * gw_degree(w) + 1)
            raise err
        for u, v in c.items():
            h[u] = F.normalize(h.get(u, 0) + v)
        steps += 1
    floor = -window - (n - 1) * gw_degree(w)
    root = TruncatedSeries(h, F, floor)
    return RootResult(root, w, steps, res)


def _solve_slice(w, n, rhs, image, scale, F, rounds):
    words = set(rhs)
    cands: set = set()
    for _ in range(rounds):
        cands |= _candidates(w, n, words)
        cols = sorted(cands, key=gw_sort_key)
        imgs = [image(cnd) for cnd in cols]
        rows_words = set(rhs)
        for im in imgs:
            rows_words |= set(im)
        row_list = sorted(rows_words, key=gw_sort_key)
        index = {u: i for i, u in enumerate(row_list)}
        A = [[0] * len(cols) for _ in row_list]
        for j, im in enumerate(imgs):
            for u, k in im.items():
                A[index[u]][j] = F.normalize(k * scale)
        rhs_vec = [rhs.get(u, 0) for u in row_list]
        sol = solve(A, rhs_vec, len(cols), F)
        if sol is not None:
            return {cols[j]: v for j, v in enumerate(sol) if v != 0}
        words = rows_words
    return None


def mn_nth_root(g: TruncatedSeries, n: int, window: int, basis_rounds: int = 3) -> RootResult:
    """Truncated ``h`` with ``h^n - g`` free of terms of degree ``>= -window``.

    Each step clears the top slice of the residual by solving the linearised
    equation ``sum_i w^i c w^(n-1-i) = slice`` over a candidate basis obtained
    by dividing slice words by powers of ``w``.
    """
    if n < 1:
        raise ValueError("root index must be positive")
    p = g.field.characteristic
    if p and n % p == 0:
        if p == 2 and n == 2:
            return mn_sqrt_char2(g, window, basis_rounds)
        raise CharDividesN(f"characteristic {p} divides {n}", p=p, n=n)
    err = NotASquareLeading if n == 2 else NotAnNthPowerLeading
    return _root_engine(g, n, window, basis_rounds, err)


def mn_sqrt_char2(g: TruncatedSeries, window: int, basis_rounds: int = 3) -> RootResult:
    if g.field.characteristic != 2:
        raise CharDividesN("mn_sqrt_char2 needs characteristic 2", p=g.field.characteristic, n=2)
    return _root_engine(g, 2, window, basis_rounds, NotASquareLeading)


@dataclass
class FractionalPower:
    value: TruncatedSeries
    m: int
    n: int
    normalized: bool
    root: RootResult

    def to_json(self) -> dict:
        out = self.value.to_json()
        out.update(m=self.m, n=self.n, normalized=self.normalized, root=self.root.root.to_json())
        return out


def mn_fractional_power(
    g: TruncatedSeries, m: int, n: int, window: int, basis_rounds: int = 3
) -> FractionalPower:
    """``g^(m/n)`` as ``h^m`` with ``h`` a truncated n-th root of ``g``."""
    d = gcd(m, n)
    normalized = d != 1
    m, n = m // d, n // d
    if n < 2:
        raise ValueError(f"n must not divide m (got {m * d}/{n * d})")
    lead = gw_degree(max(g.terms, key=gw_degree)) if g.terms else 0
    w_deg = lead // n
    # h^m has floor h.floor + (m-1) deg w; choose the root window so it reaches -window
    root_window = max(window + (m - n) * w_deg, 0)
    root = mn_nth_root(g, n, root_window, basis_rounds)
    value = root.root**m
    return FractionalPower(value, m, n, normalized, root)


def negative_power_witness(s: TruncatedSeries) -> Optional[GroupWord]:
    """Highest-degree exact word of positive degree containing an inverse letter."""
    found = [
        w
        for w in s.terms
        if gw_degree(w) >= s.floor and gw_degree(w) > 0 and gw_has_inverse(w)
    ]
    if not found:
        return None
    return min(found, key=lambda w: (-gw_degree(w), gw_sort_key(w)))


def build_theorem9_input(k: int, s_variant: str = "lemma10", field: Field | str = GF(2)) -> TruncatedSeries:
    """``g = u^2 + s`` with ``u = (xy)^k x``; ``s = xy + yx`` (``lemma10``) or
    ``s = xy + u`` (``theorem9``)."""
    if k < 2:
        raise BadK(f"k must be >= 2, got {k}", k=k)
    u = (1, 2) * k + (1,)
    terms = {u + u: 1, (1, 2): 1}
    if s_variant == "lemma10":
        terms[(2, 1)] = 1
    elif s_variant == "theorem9":
        terms[u] = 1
    else:
        raise ValueError(f"unknown s variant {s_variant!r}")
    return TruncatedSeries(terms, field)
