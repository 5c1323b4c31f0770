"""Exact coefficient fields: the rationals and prime fields F_p.

Algebraic values store raw scalars (``Fraction`` for Q, ``int`` in ``[0, p)``
for F_p) next to a :class:`Field` that knows how to canonicalise them.  Python's
own ``+``/``*`` work on the raw scalars; call :meth:`Field.normalize` afterwards.
:class:`FieldElem` is the checked, self-describing wrapper for public use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadCoefficient, BadFieldSelector, DivisionByZero, MixedFields, NotPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    characteristic: int
    selector: str

    zero = 0
    one = 1

    def normalize(self, v):
        raise NotImplementedError

    def inv(self, v):
        raise NotImplementedError

    def from_int(self, n: int):
        return self.normalize(n)

    def div(self, a, b):
        return self.normalize(a * self.inv(b))

    def format(self, v) -> str:
        return str(v)

    def __repr__(self):
        return f"<Field {self.selector}>"


class RationalField(Field):
    characteristic = 0
    selector = "q"

    def normalize(self, v):
        return v if isinstance(v, Fraction) else Fraction(v)

    def inv(self, v):
        if v == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / Fraction(v)

    def parse_literal(self, num: int, den: int = 1):
        if den <= 0:
            raise BadCoefficient(f"denominator must be positive, got {den}")
        return Fraction(num, den)

    def nth_root(self, v, n: int):
        """Exact rational n-th root of ``v`` or ``None``."""
        v = Fraction(v)
        if v < 0 and n % 2 == 0:
            return None
        sign = -1 if v < 0 else 1
        num = _int_root(abs(v.numerator), n)
        den = _int_root(v.denominator, n)
        if num is None or den is None:
            return None
        return Fraction(sign * num, den)


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime", p=p)
        self.p = p
        self.characteristic = p
        self.selector = f"fp:{p}"

    def normalize(self, v):
        return int(v) % self.p

    def inv(self, v):
        v %= self.p
        if v == 0:
            raise DivisionByZero(f"inverse of 0 in F_{self.p}")
        return pow(v, -1, self.p)

    def parse_literal(self, num: int, den: int = 1):
        if den != 1:
            raise BadCoefficient(f"fractional literal {num}/{den} not allowed over F_{self.p}")
        return num % self.p

    def elements(self):
        return range(self.p)

    def nth_root(self, v, n: int):
        v %= self.p
        for a in range(self.p):
            if pow(a, n, self.p) == v:
                return a
        return None

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))


def _int_root(n: int, k: int):
    if n in (0, 1):
        return n
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**k == n else None


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_selector(sel: str | Field) -> Field:
    """``"q"`` -> Q, ``"fp:<prime>"`` -> F_p."""
    if isinstance(sel, Field):
        return sel
    s = sel.strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise BadFieldSelector(f"bad prime in selector {sel!r}") from None
        return GF(p)
    raise BadFieldSelector(f"unknown field selector {sel!r}; expected 'q' or 'fp:<prime>'")


def check_same(a: Field, b: Field) -> Field:
    if a is not b and a != b:
        raise MixedFields(f"{a.selector} vs {b.selector}", left=a.selector, right=b.selector)
    return a


@dataclass(frozen=True)
class FieldElem:
    """A canonical scalar tagged with its field."""

    value: object
    field: Field

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.normalize(self.value))

    @classmethod
    def of(cls, value, field: Field | str) -> "FieldElem":
        return cls(value, field_from_selector(field))

    def _other(self, b):
        if not isinstance(b, (FieldElem, int, Fraction)):
            raise TypeError(f"cannot combine FieldElem with {type(b).__name__}")
        if not isinstance(b, FieldElem):
            return FieldElem(b, self.field)
        check_same(self.field, b.field)
        return b

    def __add__(self, b):
        b = self._other(b)
        return FieldElem(self.value + b.value, self.field)

    __radd__ = __add__

    def __sub__(self, b):
        b = self._other(b)
        return FieldElem(self.value - b.value, self.field)

    def __mul__(self, b):
        b = self._other(b)
        return FieldElem(self.value * b.value, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.field)

    def inv(self) -> "FieldElem":
        return FieldElem(self.field.inv(self.value), self.field)

    def __truediv__(self, b):
        return self * self._other(b).inv()

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return self.field.format(self.value)


def field_add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def field_neg(a: FieldElem) -> FieldElem:
    return -a


def field_inv(a: FieldElem) -> FieldElem:
    return a.inv()
