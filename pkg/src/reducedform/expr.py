"""Tiny expression grammar: integers, i, identifiers, + - * / ^ and parentheses.

The parser builds an AST of tuples which is then evaluated against an
environment mapping identifiers to ring elements.  The same grammar serves
field elements (identifiers: the variable and ``sqrtD``) and Hamiltonians
(identifiers: q1, q2, p1, p2).
"""
from __future__ import annotations

import re

from .errors import ExprSyntaxError, UnknownSymbol

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            pos = m.end()
            continue
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", column=start + 1)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(msg, column=tok[2] + 1)

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def expr(self):
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self):
        sign = 1
        paren = False
        if self.peek()[:2] == ("op", "("):
            self.take()
            paren = True
        if self.peek()[:2] == ("op", "-"):
            self.take()
            sign = -1
        tok = self.take()
        if tok[0] != "num":
            self.fail("exponent must be an integer", tok)
        if paren:
            self.expect(")")
        return sign * int(tok[1])

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return ("num", int(tok[1]))
        if tok[0] == "id":
            return ("id", tok[1], tok[2])
        if tok[:2] == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        self.fail("unexpected end of expression" if tok[0] == "end" else f"unexpected {tok[1]!r}", tok)


def parse_expr(text: str):
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ExprSyntaxError("empty expression", column=1)
    node = p.expr()
    if p.peek()[0] != "end":
        p.fail(f"unexpected {p.peek()[1]!r}")
    return node


def evaluate(node, env: dict, const):
    """Evaluate an AST; ``const`` embeds Python ints into the target ring."""
    kind = node[0]
    if kind == "num":
        return const(node[1])
    if kind == "id":
        name = node[1]
        if name not in env:
            raise UnknownSymbol(f"unknown symbol {name!r}", column=node[2] + 1)
        return env[name]
    if kind == "neg":
        return -evaluate(node[1], env, const)
    if kind == "pow":
        base = evaluate(node[1], env, const)
        k = node[2]
        if k < 0:
            return const(1) / (base ** (-k))
        return base ** k
    a = evaluate(node[1], env, const)
    b = evaluate(node[2], env, const)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    return a / b


def parse_field_element(text: str, desc):
    from .field import I
    env = {desc.var: desc.t, "i": desc.const(I)}
    if desc.has_extension:
        env["sqrtD"] = desc.sqrtD
    return evaluate(parse_expr(text), env, desc.const)


def parse_poly(text: str, var: str = "t"):
    """Parse a polynomial in ``var`` over Q(i)."""
    from .field import FieldDescriptor
    desc = FieldDescriptor(var)
    x = parse_field_element(text, desc)
    if not x.base.is_poly():
        raise ExprSyntaxError(f"expected a polynomial in {var}")
    return x.base.num
