"""Infix expression language for surface definitions.

Grammar, lowest to highest binding:

    expr    := term   (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := "-" factor | power
    power   := atom ("^" factor)?          right-associative
    atom    := NUMBER | "pi" | "e" | "u" | "v"
             | FUNC "(" expr ")" | "(" expr ")"

FUNC is one of sin cos tan sinh cosh tanh exp log sqrt abs; u and v are
the only variables.  ``^`` with a constant integer exponent is evaluated
by repeated multiplication so negative bases work; any other exponent
goes through exp(b*log(a)) and requires a positive base.

Parsing is total: the first error aborts with the byte offset of the
offending token.  Trees are immutable; evaluation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from . import jets
from .errors import ExprSyntaxError
from .jets import Jet2


@dataclass(frozen=True, slots=True)
class Const:
    value: float


@dataclass(frozen=True, slots=True)
class Var:
    name: str  # "u" or "v"


@dataclass(frozen=True, slots=True)
class Unary:
    op: str  # "neg" or a function name
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class Binary:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


Expr = Union[Const, Var, Unary, Binary]

FUNCTIONS = ("sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log", "sqrt", "abs")
CONSTANTS = {"pi": math.pi, "e": math.e}
VARIABLES = ("u", "v")


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # num | name | op | lparen | rparen | end
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            start = i
            while i < n and source[i].isdigit():
                i += 1
            if i < n and source[i] == ".":
                i += 1
                while i < n and source[i].isdigit():
                    i += 1
            # consume an exponent only when digits actually follow
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and source[j].isdigit():
                    i = j
                    while i < n and source[i].isdigit():
                        i += 1
            tokens.append(_Token("num", source[start:i], start))
            continue
        if ch.isalpha():
            start = i
            while i < n and source[i].isalpha():
                i += 1
            tokens.append(_Token("name", source[start:i], start))
            continue
        if ch in "+-*/^":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ch, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expr(self) -> Expr:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance().text
            node = Binary(op, node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            return Binary("^", base, self.factor())
        return base

    def atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Const(float(tok.text))
        if tok.kind == "name":
            if tok.text in VARIABLES:
                return Var(tok.text)
            if tok.text in CONSTANTS:
                return Const(CONSTANTS[tok.text])
            if tok.text in FUNCTIONS:
                opening = self.advance()
                if opening.kind != "lparen":
                    raise ExprSyntaxError(
                        f"expected '(' after function {tok.text!r}", opening.pos
                    )
                arg = self.expr()
                closing = self.advance()
                if closing.kind != "rparen":
                    raise ExprSyntaxError("unbalanced parenthesis", closing.pos)
                return Unary(tok.text, arg)
            raise ExprSyntaxError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.kind == "lparen":
            node = self.expr()
            closing = self.advance()
            if closing.kind != "rparen":
                raise ExprSyntaxError("unbalanced parenthesis", closing.pos)
            return node
        if tok.kind == "rparen":
            raise ExprSyntaxError("unbalanced parenthesis", tok.pos)
        raise ExprSyntaxError("unexpected end of expression", tok.pos)


def parse(source: str) -> Expr:
    if not source or not source.strip():
        raise ExprSyntaxError("empty expression", 0)
    parser = _Parser(_tokenize(source))
    node = parser.expr()
    trailing = parser.peek()
    if trailing.kind != "end":
        raise ExprSyntaxError(f"unexpected token {trailing.text!r}", trailing.pos)
    return node


def eval_jet2(e: Expr, u: float, v: float) -> Jet2:
    """Value and all partials through second order at (u, v)."""
    return _eval(e, jets.seed_u(u), jets.seed_v(v))


def _eval(e: Expr, ju: Jet2, jv: Jet2) -> Jet2:
    match e:
        case Const(value):
            return Jet2(value)
        case Var(name):
            return ju if name == "u" else jv
        case Unary(op, arg):
            return jets.UNARY[op](_eval(arg, ju, jv))
        case Binary(op, left, right):
            a = _eval(left, ju, jv)
            b = _eval(right, ju, jv)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "/":
                return a / b
            return jets.powj(a, b)
    raise TypeError(f"not an expression node: {e!r}")


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}
_ATOM_PREC = 9


def _prec(e: Expr) -> int:
    match e:
        case Binary(op, _, _):
            return _PREC[op]
        case Unary("neg", _):
            return _PREC["neg"]
        case _:
            return _ATOM_PREC


def to_source(e: Expr) -> str:
    """Print with minimal parentheses; re-parsing the output rebuilds a
    structurally identical tree."""
    match e:
        case Const(value):
            return repr(value)
        case Var(name):
            return name
        case Unary("neg", arg):
            inner = to_source(arg)
            if _prec(arg) < _PREC["neg"]:
                inner = f"({inner})"
            return f"-{inner}"
        case Unary(op, arg):
            return f"{op}({to_source(arg)})"
        case Binary(op, left, right):
            lsrc, rsrc = to_source(left), to_source(right)
            p = _PREC[op]
            if op == "^":
                if _prec(left) <= p:
                    lsrc = f"({lsrc})"
                if _prec(right) < p:
                    rsrc = f"({rsrc})"
            else:
                if _prec(left) < p:
                    lsrc = f"({lsrc})"
                if _prec(right) <= p:
                    rsrc = f"({rsrc})"
            return f"{lsrc} {op} {rsrc}"
    raise TypeError(f"not an expression node: {e!r}")


def substitute(e: Expr, bindings: dict[str, Expr]) -> Expr:
    """Replace variables by whole subtrees (used to compose expressions)."""
    match e:
        case Const(_):
            return e
        case Var(name):
            return bindings.get(name, e)
        case Unary(op, arg):
            return Unary(op, substitute(arg, bindings))
        case Binary(op, left, right):
            return Binary(op, substitute(left, bindings), substitute(right, bindings))
    raise TypeError(f"not an expression node: {e!r}")


def variables_of(e: Expr) -> set[str]:
    match e:
        case Const(_):
            return set()
        case Var(name):
            return {name}
        case Unary(_, arg):
            return variables_of(arg)
        case Binary(_, left, right):
            return variables_of(left) | variables_of(right)
    raise TypeError(f"not an expression node: {e!r}")
