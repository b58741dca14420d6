"""
Parser for elements of A written in T and Y
-------------------------------------------
Grammar (whitespace ignored):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := INT | '[' INT (',' INT)* ']' | 'T' ['^' INT] | 'Y' ['^' '1']

An integer coefficient lives in the prime field; a bracketed list gives the
F_p-digits of an element of F_q. T stands for theta and Y for eta.
"""

from __future__ import annotations
import logging
import re
from typing import List, Tuple

from src.errors import ExprSyntaxError
from src.fields.function_field import KContext, KElem

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))?")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            ch = m.group(2)
            if ch not in "+-*^[],TY":
                raise ExprSyntaxError(f"unexpected character {ch!r}", m.start(2))
            tokens.append((ch, ch, m.start(2)))
        elif m.end() == pos or m.end() == len(text):
            break
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, ctx: KContext, text: str):
        self.ctx = ctx
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> KElem:
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", 0)
        sign = 1
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1
        total = self.term() if sign > 0 else -self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            t = self.term()
            total = total + t if op == "+" else total - t
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return total

    def term(self) -> KElem:
        value = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            value = value * self.factor()
        return value

    def factor(self) -> KElem:
        ctx = self.ctx
        kind, text, pos = self.peek()
        if kind == "int":
            self.take("int")
            return ctx.from_int(int(text))
        if kind == "[":
            self.take("[")
            digits = [int(self.take("int")[1])]
            while self.peek()[0] == ",":
                self.take(",")
                digits.append(int(self.take("int")[1]))
            self.take("]")
            if len(digits) > ctx.F.r or any(d >= ctx.F.p for d in digits):
                raise ExprSyntaxError(f"{digits} is not a digit vector of F_{ctx.q}", pos)
            return ctx.const(ctx.F.from_digits(digits))
        if kind == "T":
            self.take("T")
            return ctx.theta ** self.exponent()
        if kind == "Y":
            self.take("Y")
            e = self.exponent()
            if e > 1:
                raise ExprSyntaxError("Y powers above 1 are not accepted; reduce with the curve equation", pos)
            return ctx.eta if e == 1 else ctx.one
        what = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected a coefficient, T or Y, found {what}", pos)

    def exponent(self) -> int:
        if self.peek()[0] != "^":
            return 1
        self.take("^")
        return int(self.take("int")[1])


def parse_a_expr(ctx: KContext, text: str) -> KElem:
    """Parse an element of A = F_q[theta, eta] from T/Y notation."""
    value = _Parser(ctx, text).expr()
    logger.debug("parsed %r as %s", text, value)
    return value
