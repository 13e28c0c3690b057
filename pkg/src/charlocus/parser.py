"""Recursive-descent parser for the polynomial expression grammar.

    expression := term ('+' term)*
    term       := factor ('*' factor)*
    factor     := atom ['^' positiveInt]
    atom       := generator | '(' expression ')' | integer

Generator names are whatever the target presentation declares (``a``,
``w<i>``, ``p<i>``, ``W<i>`` in the built-in rings); integers may carry a
leading minus sign; whitespace is insignificant.
"""

from __future__ import annotations

import re

from .graded import FreeTruncated, GradedPoly, InputError, RingPresentation, Z2

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*^()]))")


class ParseError(InputError):
    """Syntax or semantic error in a class expression, with position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.lastgroup == "int":
            tokens.append(("int", int(m.group("int")), m.start("int")))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, presentation: RingPresentation, field: str):
        self.text = text
        self.presentation = presentation
        self.field = field
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.peek()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)
        return self.advance()

    def parse(self) -> GradedPoly:
        out = self.expression()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return out

    def expression(self) -> GradedPoly:
        out = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "+":
                self.advance()
                out = out + self.term()
            else:
                return out

    def term(self) -> GradedPoly:
        out = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.advance()
                out = out * self.factor()
            else:
                return out

    def factor(self) -> GradedPoly:
        base, gen_pos = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            ekind, exp, epos = self.advance()
            if ekind != "int" or exp < 1:
                raise ParseError("exponent must be a positive integer", epos)
            if gen_pos is not None:
                # a single generator power: reject degrees past the cap of a
                # free ring (relations absorb it elsewhere)
                name = base
                idx = self._gen_index(name, gen_pos)
                degree = self.presentation.generators[idx].degree * exp
                if isinstance(self.presentation, FreeTruncated) and degree > self.presentation.cap:
                    raise ParseError(
                        f"degree {degree} of {name}^{exp} exceeds cap "
                        f"{self.presentation.cap}", gen_pos)
                mono = self.presentation.monomial({name: exp})
                return GradedPoly.make(self.presentation, self.field, {mono: 1})
            return base ** exp
        if gen_pos is not None:
            return GradedPoly.gen(self.presentation, base, self.field)
        return base

    def _gen_index(self, name: str, pos: int) -> int:
        try:
            return self.presentation.index_of(name)
        except InputError:
            raise ParseError(f"unknown generator {name!r}", pos)

    def atom(self):
        """Returns (GradedPoly, None) or (generator_name, position) so that
        factor() can build bare generator powers directly."""
        kind, val, pos = self.advance()
        if kind == "int":
            return GradedPoly.make(
                self.presentation, self.field,
                {(0,) * len(self.presentation.generators): val}), None
        if kind == "name":
            self._gen_index(val, pos)
            return val, pos
        if kind == "op" and val == "(":
            inner = self.expression()
            self.expect_op(")")
            return inner, None
        raise ParseError(f"expected a generator, integer or '('", pos)


def parse_class(text: str, presentation: RingPresentation, field: str = Z2) -> GradedPoly:
    """Parse an expression into a normal-form polynomial of the given ring."""
    return _Parser(text, presentation, field).parse()
