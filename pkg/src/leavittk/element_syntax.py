"""Text syntax for algebra elements.

Grammar (whitespace separates tokens, juxtaposition multiplies)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor (['.'] factor)*
    factor  := primary '*'*
    primary := scalar | arrow-id | 'e' '(' vertex-id ')' | '(' expr ')'

Scalars are integers or fractions like ``2/3``.  Example input:
``2/3 a b* - e(v1)``.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Element, LeavittAlgebra


class ElementSyntaxError(ValueError):
    """Bad element expression; `position` is a 0-based character offset."""

    def __init__(self, position: int, message: str):
        super().__init__(f"position {position}: {message}")
        self.position = position


_SYMBOLS = {"+", "-", ".", "*", "(", ")"}


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append((ch, ch, i, ch))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == "/":
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ElementSyntaxError(j, "expected digits after '/'")
                tokens.append(("num", Fraction(int(text[i:j]), int(text[j + 1:k])), i,
                               text[i:k]))
                i = k
            else:
                tokens.append(("num", Fraction(int(text[i:j])), i, text[i:j]))
                i = j
            continue
        if ch.isalnum() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("id", text[i:j], i, text[i:j]))
            i = j
            continue
        raise ElementSyntaxError(i, f"unexpected character {ch!r}")
    tokens.append(("end", None, n, ""))
    return tokens


class _Parser:
    def __init__(self, alg: LeavittAlgebra, text: str):
        self.alg = alg
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ElementSyntaxError(tok[2], f"expected {kind!r}")
        return tok

    def parse(self) -> Element:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ElementSyntaxError(tok[2], "trailing input")
        return self._as_element(value)

    def expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.advance()
            negate = True
        acc = self.term()
        if negate:
            acc = self._negate(acc)
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            if op == "-":
                rhs = self._negate(rhs)
            acc = self._add(acc, rhs)
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == ".":
                self.advance()
                acc = self._mul(acc, self.factor())
            elif kind in ("num", "id", "("):
                acc = self._mul(acc, self.factor())
            else:
                return acc

    def factor(self):
        value = self.primary()
        while self.peek()[0] == "*":
            tok = self.advance()
            if isinstance(value, Fraction):
                raise ElementSyntaxError(tok[2], "cannot star a scalar")
            value = value.star()
        return value

    def primary(self):
        tok = self.advance()
        kind, value, pos = tok[0], tok[1], tok[2]
        if kind == "num":
            return value
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "id":
            if value == "e" and self.peek()[0] == "(":
                self.advance()
                vtok = self.advance()
                if vtok[0] not in ("id", "num"):
                    raise ElementSyntaxError(vtok[2], "expected a vertex id")
                self.expect(")")
                name = vtok[3]
                if name not in self.alg.vertices:
                    raise ElementSyntaxError(vtok[2], f"unknown vertex {name!r}")
                return self.alg.vertex(name)
            if value not in self.alg._src:
                raise ElementSyntaxError(pos, f"unknown arrow {value!r}")
            return self.alg.arrow(value)
        raise ElementSyntaxError(pos, "expected a scalar, arrow, e(vertex) or '('")

    # Scalars stay plain Fractions until they meet an element, so a bare
    # number denotes that multiple of the identity.

    def _as_element(self, value) -> Element:
        if isinstance(value, Fraction):
            return self.alg.one() * value
        return value

    def _negate(self, value):
        return -value

    def _add(self, a, b):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a + b
        return self._as_element(a) + self._as_element(b)

    def _mul(self, a, b):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return a * b
        if isinstance(a, Fraction):
            return b * a
        return a * b


def parse_element(alg: LeavittAlgebra, text: str) -> Element:
    """Parse and normalize an element expression.

    >>> from .quiver import parse_quiver
    >>> from .algebra import render_element
    >>> alg = LeavittAlgebra(parse_quiver("vertices w\\narrow x w w\\narrow y w w"))
    >>> render_element(parse_element(alg, "x* . x"))
    '1'
    """
    return _Parser(alg, text).parse()


__all__ = ["ElementSyntaxError", "parse_element"]
