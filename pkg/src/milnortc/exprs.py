"""Factor-expression DSL: parser, printer, and evaluation.

Grammar (whitespace insensitive, single-token lookahead):

    expr := term ('+' term)*
    term := pow ('*' pow)*
    pow  := atom ('^' uint)?
    atom := gen | '(' expr ')' | '1'
    gen  := name position            e.g. a1, b2, x3, alpha1
          | name '.' factor '.' position   e.g. x.2.1  (product rings)

``parse -> print -> parse`` is the identity on the AST.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ExprSyntaxError
from .f2algebra import Presentation, generator
from .tensorpower import TensorElement, inject, t_multiply, t_power, t_unit


@dataclass(frozen=True)
class Gen:
    name: str
    position: int


@dataclass(frozen=True)
class Unit:
    pass


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<gen>[a-z]+(?:\.\d+\.)?\d+)|(?P<int>\d+)|(?P<op>[+*^()]))"
)
_GEN_RE = re.compile(r"^([a-z]+)(?:\.(\d+)\.)?(\d+)$")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        mo = _TOKEN_RE.match(text, pos)
        if not mo or mo.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if mo.group("gen"):
            tokens.append(("gen", mo.group("gen"), pos))
        elif mo.group("int"):
            tokens.append(("int", mo.group("int"), pos))
        else:
            tokens.append((mo.group("op"), mo.group("op"), pos))
        pos = mo.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok[1] or 'end'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self):
        terms = [self.term()]
        while self.peek()[0] == "+":
            self.take("+")
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.pow()]
        while self.peek()[0] == "*":
            self.take("*")
            factors.append(self.pow())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def pow(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            tok = self.take("int")
            return Pow(base, int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "gen":
            self.take()
            mo = _GEN_RE.match(tok[1])
            name, factor, position = mo.group(1), mo.group(2), mo.group(3)
            if factor is not None:
                name = f"{name}.{int(factor)}"
            return Gen(name, int(position))
        if tok[0] == "int":
            if tok[1] == "1":
                self.take()
                return Unit()
            raise ExprSyntaxError(f"unexpected number {tok[1]!r}", tok[2])
        if tok[0] == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        raise ExprSyntaxError(f"unexpected token {tok[1] or 'end'!r}", tok[2])


def to_string(node) -> str:
    """Canonical printer; round-trips through :func:`parse_factor_expr`."""
    if isinstance(node, Gen):
        if "." in node.name:
            base, factor = node.name.split(".")
            return f"{base}.{factor}.{node.position}"
        return f"{node.name}{node.position}"
    if isinstance(node, Unit):
        return "1"
    if isinstance(node, Sum):
        return "+".join(_wrap(t, (Sum,)) for t in node.terms)
    if isinstance(node, Prod):
        return "*".join(_wrap(f, (Sum, Prod)) for f in node.factors)
    if isinstance(node, Pow):
        return f"{_wrap(node.base, (Sum, Prod, Pow))}^{node.exponent}"
    raise TypeError(f"not an expression node: {node!r}")


def _wrap(node, kinds) -> str:
    text = to_string(node)
    return f"({text})" if isinstance(node, kinds) else text


def _resolve_gen(P: Presentation, name: str) -> str:
    if name in P.gen_names:
        return name
    # alpha is an accepted alias for the truncated-ring generator
    if name == "alpha" and "x" in P.gen_names:
        return "x"
    raise ValueError(f"unknown generator {name!r} for presentation {P!r}")


def validate(node, arity: int, presentation: Presentation | None = None):
    if isinstance(node, Gen):
        if not 1 <= node.position <= arity:
            raise ValueError(
                f"position {node.position} out of range 1..{arity} in {to_string(node)!r}"
            )
        if presentation is not None:
            _resolve_gen(presentation, node.name)
    elif isinstance(node, Sum):
        for t in node.terms:
            validate(t, arity, presentation)
    elif isinstance(node, Prod):
        for f in node.factors:
            validate(f, arity, presentation)
    elif isinstance(node, Pow):
        if node.exponent < 0:
            raise ValueError("exponents must be non-negative")
        validate(node.base, arity, presentation)


def parse_factor_expr(text: str, arity: int, presentation: Presentation | None = None):
    """Parse and validate a factor expression; returns the AST."""
    node = _Parser(text).parse()
    validate(node, arity, presentation)
    return node


def evaluate(node, P: Presentation, n: int) -> TensorElement:
    """Evaluate an expression AST in the n-fold tensor power of P."""
    if isinstance(node, Gen):
        if not 1 <= node.position <= n:
            raise ValueError(f"position {node.position} out of range 1..{n}")
        return inject(P, n, node.position, generator(P, _resolve_gen(P, node.name)))
    if isinstance(node, Unit):
        return t_unit(P, n)
    if isinstance(node, Sum):
        acc = evaluate(node.terms[0], P, n)
        for t in node.terms[1:]:
            acc = acc + evaluate(t, P, n)
        return acc
    if isinstance(node, Prod):
        acc = evaluate(node.factors[0], P, n)
        for f in node.factors[1:]:
            acc = t_multiply(acc, evaluate(f, P, n))
        return acc
    if isinstance(node, Pow):
        return t_power(evaluate(node.base, P, n), node.exponent)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_text(text: str, P: Presentation, n: int) -> TensorElement:
    return evaluate(parse_factor_expr(text, n, P), P, n)
