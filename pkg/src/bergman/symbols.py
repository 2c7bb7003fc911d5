"""Tiny expression grammar for polynomial symbols on the command line.

Grammar (whitespace ignored):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)?
    atom   := number | 'z' k | 'conj' '(' 'z' k ')' | 'abs2' '(' 'z' ')'
            | '(' expr ')'

Coordinates are 1-based: ``z1 .. zd``.  ``abs2(z)`` is |z|^2.  The parser
targets MixedPoly directly so the exact integration paths apply; there is
no general expression evaluation.  ``poly_to_string`` prints a canonical
form whose re-parse recovers the same polynomial.
"""

from __future__ import annotations

import re
from typing import List, Tuple

from .multiindex import degree
from .polynomials import MixedPoly


class SymbolParseError(ValueError):
    pass


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>conj|abs2)"
    r"|(?P<coord>z\d+)"
    r"|(?P<z>z)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str) -> List[Tuple[str, str]]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SymbolParseError(f"unexpected character at position {pos}: {text[pos:]!r}")
        pos = m.end()
        for kind in ("num", "name", "coord", "z", "op"):
            val = m.group(kind)
            if val is not None:
                out.append((kind, val))
                break
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, tokens: List[Tuple[str, str]], d: int):
        self.tokens = tokens
        self.pos = 0
        self.d = d

    def peek(self) -> Tuple[str, str]:
        return self.tokens[self.pos]

    def take(self, kind: str, value: str | None = None) -> str:
        k, v = self.tokens[self.pos]
        if k != kind or (value is not None and v != value):
            raise SymbolParseError(f"expected {value or kind}, found {v!r}")
        self.pos += 1
        return v

    def parse(self) -> MixedPoly:
        out = self.expr()
        if self.peek()[0] != "end":
            raise SymbolParseError(f"trailing input starting at {self.peek()[1]!r}")
        return out

    def expr(self) -> MixedPoly:
        negate = False
        if self.peek() == ("op", "-"):
            self.take("op", "-")
            negate = True
        out = self.term()
        if negate:
            out = out.scale(-1.0)
        while self.peek()[1] in ("+", "-"):
            op = self.take("op")
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> MixedPoly:
        out = self.factor()
        while self.peek() == ("op", "*"):
            self.take("op", "*")
            out = out * self.factor()
        return out

    def factor(self) -> MixedPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take("op", "^")
            kind, val = self.tokens[self.pos]
            if kind != "num" or not val.isdigit():
                raise SymbolParseError(f"exponent must be a non-negative integer, found {val!r}")
            self.pos += 1
            return base ** int(val)
        return base

    def _coord_index(self, token: str) -> int:
        j = int(token[1:])
        if not 1 <= j <= self.d:
            raise SymbolParseError(f"coordinate {token} out of range for dimension {self.d}")
        return j

    def atom(self) -> MixedPoly:
        kind, val = self.peek()
        if kind == "num":
            self.pos += 1
            return MixedPoly.constant(self.d, float(val))
        if kind == "coord":
            self.pos += 1
            j = self._coord_index(val)
            e = tuple(1 if i == j - 1 else 0 for i in range(self.d))
            return MixedPoly.term(self.d, e, (0,) * self.d)
        if kind == "name" and val == "conj":
            self.pos += 1
            self.take("op", "(")
            j = self._coord_index(self.take("coord"))
            self.take("op", ")")
            e = tuple(1 if i == j - 1 else 0 for i in range(self.d))
            return MixedPoly.term(self.d, (0,) * self.d, e)
        if kind == "name" and val == "abs2":
            self.pos += 1
            self.take("op", "(")
            self.take("z")
            self.take("op", ")")
            return MixedPoly.abs2(self.d)
        if kind == "op" and val == "(":
            self.take("op", "(")
            out = self.expr()
            self.take("op", ")")
            return out
        raise SymbolParseError(f"unexpected token {val!r}")


def parse_symbol(text: str, d: int) -> MixedPoly:
    """Parse the tiny symbol grammar into an exact MixedPoly."""
    return _Parser(_tokenize(text), d).parse()


def poly_to_string(p: MixedPoly) -> str:
    """Canonical printout; parse(poly_to_string(p), d) recovers p exactly.

    Requires real coefficients, which is all the grammar can express.
    """
    if p.is_zero():
        return "0"
    keys = sorted(
        p.coeffs,
        key=lambda ab: (degree(ab[0]) + degree(ab[1]), tuple(-x for x in ab[0]),
                        tuple(-x for x in ab[1])),
    )
    out = ""
    for a, b in keys:
        c = p.coeffs[(a, b)]
        if abs(c.imag) > 0.0:
            raise ValueError(f"coefficient {c} has an imaginary part; not printable in the grammar")
        sign = "-" if c.real < 0 else "+"
        factors = [repr(abs(c.real))]
        for j, e in enumerate(a):
            if e == 1:
                factors.append(f"z{j + 1}")
            elif e > 1:
                factors.append(f"z{j + 1}^{e}")
        for j, e in enumerate(b):
            if e == 1:
                factors.append(f"conj(z{j + 1})")
            elif e > 1:
                factors.append(f"conj(z{j + 1})^{e}")
        piece = "*".join(factors)
        if not out:
            out = piece if sign == "+" else f"-{piece}"
        else:
            out += f" {sign} {piece}"
    return out
