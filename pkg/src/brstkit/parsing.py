"""Expression parser for scalars and noncommutative polynomials.

Grammar (whitespace insignificant, ``*`` mandatory between factors)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT | IDENT | '(' expr ')'

Division is accepted only by a nonzero pure scalar, so ``3/2`` and
``a3/(2*a2)`` are fine but ``chi1/chi2`` is rejected.
"""
from __future__ import annotations

import re
from typing import Callable, List, NamedTuple

from .coeff import ParameterSet, Scalar, ScalarDivisionError


class ParseError(ValueError):
    def __init__(self, message, line=1, column=1, text=""):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.text = text


class UnknownSymbolError(ParseError):
    def __init__(self, name, line=1, column=1, text=""):
        super().__init__(f"unknown identifier {name!r}", line, column, text)
        self.name = name


class Token(NamedTuple):
    kind: str
    value: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])"
)


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1, text)
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            nl = chunk.count("\n")
            if nl:
                line += nl
                line_start = pos + chunk.rindex("\n") + 1
        else:
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    col = pos - line_start + 1
    out.append(Token("end", "", line, col))
    return out


class _Parser:
    """Recursive descent over a token list.

    ``ident`` maps a name to a value; ``const`` lifts an int; ``as_scalar``
    extracts the scalar from a value or returns None if it is not one.
    """

    def __init__(self, text, ident: Callable, const: Callable, as_scalar: Callable):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.ident = ident
        self.const = const
        self.as_scalar = as_scalar

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok):
        return ParseError(msg, tok.line, tok.column, self.text)

    def expect(self, value):
        tok = self.take()
        if tok.value != value or tok.kind not in ("op",):
            shown = tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {shown!r}", tok)
        return tok

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression", self.peek())
        v = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected {tok.value!r}", tok)
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            tok = self.take()
            rhs = self.unary()
            if tok.value == "*":
                v = v * rhs
            else:
                s = self.as_scalar(rhs)
                if s is None:
                    raise self.error("division is only allowed by a scalar", tok)
                if s.is_zero():
                    raise self.error("division by zero", tok)
                try:
                    v = v * s.inv()
                except ScalarDivisionError as exc:
                    raise self.error(str(exc), tok) from None
        return v

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.take()
            v = self.unary()
            return -v if tok.value == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.take()
            tok = self.take()
            if tok.kind != "int":
                raise self.error("exponent must be a positive integer literal", tok)
            k = int(tok.value)
            if k < 1:
                raise self.error("exponent must be at least 1", tok)
            base = base**k
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "int":
            return self.const(int(tok.value))
        if tok.kind == "ident":
            v = self.ident(tok.value)
            if v is None:
                raise UnknownSymbolError(tok.value, tok.line, tok.column, self.text)
            return v
        if tok.kind == "op" and tok.value == "(":
            v = self.expr()
            self.expect(")")
            return v
        shown = tok.value or "end of input"
        raise self.error(f"unexpected {shown!r}", tok)


def parse_scalar(text: str, params: ParameterSet = ParameterSet(()), extend: bool = False) -> Scalar:
    """Parse a rational function; with ``extend`` unknown names become new parameters."""
    state = {"ps": params}

    def ident(name):
        ps = state["ps"]
        if name not in ps:
            if not extend:
                return None
            ps = state["ps"] = ps.extend([name])
        return ps.symbol(name)

    def const(n):
        return Scalar._raw(state["ps"].ring.ground_new(n), state["ps"].ring.one, state["ps"])

    return _Parser(text, ident, const, lambda v: v).parse()


def parse_poly(text: str, presentation):
    """Parse an expression over a :class:`~brstkit.ncpoly.Presentation`."""
    from .ncpoly import Poly

    alphabet = presentation.alphabet
    params = presentation.params

    def ident(name):
        if name in alphabet:
            return Poly.gen(alphabet, name, params)
        if name in params:
            return Poly.constant(alphabet, params.symbol(name), params)
        return None

    def const(n):
        return Poly.constant(alphabet, n, params)

    def scalar_of(v):
        if not v.terms:
            return params.zero
        if set(v.terms) == {()}:
            return v.terms[()]
        return None

    return _Parser(text, ident, const, scalar_of).parse()
