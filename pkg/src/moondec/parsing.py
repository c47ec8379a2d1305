"""Text grammar for rational functions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-')* power
    power  := atom ('^' INT)?          -- INT a positive integer literal
    atom   := INT | 'x' | '(' expr ')'

Whitespace is insignificant.  The canonical printer (ratfun_text) emits text
this grammar accepts, so printing and parsing round-trip exactly.
"""

from __future__ import annotations

from moondec.errors import RatFunSyntaxError
from moondec.ratfun import RatFun


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def take_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise RatFunSyntaxError("expected an integer", start)
        return int(self.text[start:self.pos])


def parse_ratfun(text: str) -> RatFun:
    """Parse per the module grammar into a canonical RatFun."""
    tok = _Tokenizer(text)
    value = _expr(tok)
    tok.skip_ws()
    if tok.pos != len(text):
        raise RatFunSyntaxError(f"unexpected {text[tok.pos]!r}", tok.pos)
    return value


def _expr(tok: _Tokenizer) -> RatFun:
    value = _term(tok)
    while tok.peek() in ("+", "-"):
        op = tok.take()
        rhs = _term(tok)
        value = value + rhs if op == "+" else value - rhs
    return value


def _term(tok: _Tokenizer) -> RatFun:
    value = _unary(tok)
    while tok.peek() in ("*", "/"):
        op = tok.take()
        rhs = _unary(tok)
        value = value * rhs if op == "*" else value / rhs
    return value


def _unary(tok: _Tokenizer) -> RatFun:
    negate = False
    while tok.peek() in ("+", "-"):
        if tok.take() == "-":
            negate = not negate
    value = _power(tok)
    return -value if negate else value


def _power(tok: _Tokenizer) -> RatFun:
    value = _atom(tok)
    if tok.peek() == "^":
        tok.take()
        at = tok.pos
        exponent = tok.take_int()
        if exponent < 1:
            raise RatFunSyntaxError("exponent must be a positive integer", at)
        value = value ** exponent
    return value


def _atom(tok: _Tokenizer) -> RatFun:
    ch = tok.peek()
    if ch == "(":
        tok.take()
        value = _expr(tok)
        if tok.peek() != ")":
            raise RatFunSyntaxError("expected ')'", tok.pos)
        tok.take()
        return value
    if ch == "x":
        tok.take()
        return RatFun.identity()
    if ch.isdigit():
        return RatFun.constant(tok.take_int())
    raise RatFunSyntaxError(
        f"expected a number, 'x' or '(', got {ch!r}" if ch else
        "unexpected end of input", tok.pos)
