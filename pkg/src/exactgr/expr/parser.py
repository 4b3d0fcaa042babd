"""Recursive-descent parser for the expression grammar.

    expr   := term (("+"|"-") term)*
    term   := factor (("*"|"/") factor)*
    factor := base ("^" integer)?
    base   := integer | identifier | "(" expr ")" | "-" factor
            | "diff(" identifier ("," identifier)+ ")"

Whitespace-insensitive.  Identifiers resolve against a Context; jets may
be written f_xy (when every function argument is a single letter) or
diff(f,x,y).  Exponents are integers, negative allowed.
"""

from __future__ import annotations

import re

from .atoms import Context
from .rational import DivisionByZeroExpr, Expr, ONE_EXPR


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UndeclaredIdentifier(ParseError):
    def __init__(self, name: str, position: int):
        super().__init__(f"undeclared identifier {name!r}", position)
        self.name = name


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|([()+\-*/^,])|(\S))")


def _tokenize(source: str):
    tokens = []
    pos = 0
    n = len(source)
    while pos < n:
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            break
        if m.group(4):
            raise ParseError(f"unexpected character {m.group(4)!r}", m.start(4))
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str, ctx: Context):
        self.source = source
        self.ctx = ctx
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val!r}" if val else f"expected {op!r}", pos)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {val!r}", pos)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                e = e + rhs if val == "+" else e - rhs
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                if val == "*":
                    e = e * rhs
                else:
                    try:
                        e = e / rhs
                    except DivisionByZeroExpr:
                        raise ParseError("division by zero", pos) from None
            else:
                return e

    def factor(self) -> Expr:
        e = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            e = self._apply_pow(e, pos)
        return e

    def _apply_pow(self, e: Expr, op_pos: int) -> Expr:
        sign = 1
        kind, val, pos = self.peek()
        if kind == "op" and val in "+-":
            self.next()
            if val == "-":
                sign = -1
            kind, val, pos = self.peek()
        if kind != "int":
            raise ParseError("exponent must be an integer", pos)
        self.next()
        k = sign * int(val)
        if k < 0 and e.is_zero:
            raise ParseError("zero raised to a negative power", op_pos)
        return e ** k

    def base(self) -> Expr:
        kind, val, pos = self.next()
        if kind == "int":
            return Expr.const(int(val))
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "name":
            if val == "diff":
                return self._diff_call(pos)
            atom = self.ctx.resolve(val)
            if atom is None:
                raise UndeclaredIdentifier(val, pos)
            return Expr.atom(atom)
        raise ParseError(f"unexpected token {val!r}" if val else "unexpected end of input", pos)

    def _diff_call(self, pos: int) -> Expr:
        self.expect_op("(")
        kind, fname, fpos = self.next()
        if kind != "name":
            raise ParseError("diff() expects a function name first", fpos)
        if fname not in self.ctx.functions:
            raise UndeclaredIdentifier(fname, fpos)
        args = self.ctx.functions[fname]
        counts = {a: 0 for a in args}
        got_any = False
        while True:
            kind, val, p = self.next()
            if kind == "op" and val == ")":
                break
            if kind != "op" or val != ",":
                raise ParseError("expected ',' or ')' in diff()", p)
            kind, cname, cpos = self.next()
            if kind != "name":
                raise ParseError("diff() expects coordinate names", cpos)
            if cname not in args:
                raise ParseError(
                    f"{cname!r} is not an argument of {fname!r}", cpos
                )
            counts[cname] += 1
            got_any = True
        if not got_any:
            raise ParseError("diff() needs at least one derivative coordinate", pos)
        return Expr.atom(self.ctx.jet(fname, counts))


def parse(source: str, ctx: Context) -> Expr:
    """Parse an expression string into its canonical Expr."""
    return _Parser(source, ctx).parse()
