"""Text front-end for free-algebra polynomials.

Grammar (whitespace ignored)::

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := factor ('*' factor)*
    factor     := coefficient | atom ['^' positive-integer]
    atom       := variable | '(' expression ')'
    coefficient:= integer ['/' positive-integer]      # fractions over Q only

Powers of parenthesised expressions are repeated noncommutative products.
"""

from __future__ import annotations

import re
from typing import Sequence

from .errors import BadCoefficient, ParseError, UnknownVariable
from .fields import QQ, Field, field_from_selector
from .poly import Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def alphabet_names(nvars: int) -> list[str]:
    if nvars == 2:
        return ["x", "y"]
    return [f"x{i + 1}" for i in range(nvars)]


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # trailing whitespace
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, field: Field, names: Sequence[str]):
        self.text = text
        self.field = field
        self.names = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg} at position {tok[2]}", tok[2], self.text)

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}", tok)

    def is_op(self, *ops):
        tok = self.peek()
        return tok[0] == "op" and tok[1] in ops

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty expression")
        result = self.expression()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return result

    def expression(self) -> Polynomial:
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.is_op("+", "-"):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.is_op("*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def exponent(self) -> int:
        tok = self.take()
        if tok[0] != "num" or tok[1] < 1:
            self.error("expected positive integer exponent", tok)
        return tok[1]

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            num, den = tok[1], 1
            if self.is_op("/"):
                self.take()
                dtok = self.take()
                if dtok[0] != "num" or dtok[1] == 0:
                    self.error("expected positive denominator", dtok)
                den = dtok[1]
            try:
                c = self.field.parse_literal(num, den)
            except BadCoefficient as e:
                e.context["position"] = tok[2]
                raise
            return Polynomial.constant(c, self.field, self.nvars)
        if tok[0] == "name":
            self.take()
            if tok[1] not in self.names:
                raise UnknownVariable(
                    f"unknown variable {tok[1]!r} at position {tok[2]}",
                    name=tok[1],
                    position=tok[2],
                    alphabet=list(self.names),
                )
            atom = Polynomial.var(self.names[tok[1]], self.field, self.nvars)
        elif tok[0] == "op" and tok[1] == "(":
            self.take()
            atom = self.expression()
            self.expect_op(")")
        else:
            self.error("expected coefficient, variable or '('")
        if self.is_op("^"):
            self.take()
            atom = atom ** self.exponent()
        return atom


def parse_poly(text: str, field: Field | str = QQ, alphabet: int | Sequence[str] = 2) -> Polynomial:
    field = field_from_selector(field)
    names = alphabet_names(alphabet) if isinstance(alphabet, int) else list(alphabet)
    return _Parser(text, field, names).parse()


def format_word(word, names: Sequence[str] | None = None) -> str:
    """Run-length print: ``(0,1,1,0)`` -> ``x*y^2*x``."""
    names = names or alphabet_names(max(2, max(word, default=0) + 1))
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        n = names[word[i]]
        parts.append(n if j - i == 1 else f"{n}^{j - i}")
        i = j
    return "*".join(parts)


def print_poly(a: Polynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text, terms in descending degree-lexicographic order."""
    names = names or alphabet_names(a.nvars)
    if not a.terms:
        return "0"
    out = []
    for w, c in a.sorted_terms():
        neg = a.field.characteristic == 0 and c < 0
        mag = -c if neg else c
        if not w:
            body = str(mag)
        elif mag == 1:
            body = format_word(w, names)
        else:
            body = f"{mag}*{format_word(w, names)}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
