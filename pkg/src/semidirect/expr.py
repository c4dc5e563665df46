"""A small expression language for group elements of D and T~ over the Pauli algebra.

Grammar::

    program := gexpr ['@' alg] | alg
    gexpr   := gterm ('*' gterm)*
    gterm   := gatom ('^-1')*
    gatom   := 'S[' alg ']' | 'L[' alg ']' | 'R[' alg ']'
             | 'D(' alg ',' alg ')' | 'T(' alg ',' alg ',' alg ')'
             | 'star(' gexpr ')' | '(' gexpr ')'
    alg     := aterm (('+' | '-') aterm)*
    aterm   := afactor ('*' afactor)*
    afactor := '-' afactor | NUMBER ['i'] | 'i' | 'sigma0'..'sigma3'
             | '[[' alg ',' alg '],[' alg ',' alg ']]' | '(' alg ')'

``S[b]`` is the shift a -> a + b, ``L[l]`` is a -> l a and ``R[r]`` is the
inverse-twisted right operator a -> a r^-1.  A bare number stands for that
multiple of sigma0.  ``x * y`` composes (apply y first); mixing D and T~
operands promotes the D operand to T~.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraElement, AlgebraError, from_matrix, pauli_spec, to_matrix
from .groups import (
    DElement,
    TElement,
    apply_D,
    apply_T,
    compose_D,
    compose_T,
    invert_D,
    invert_T,
    star_T,
)


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, position: int, expected, found: str):
        self.position = position
        self.expected = tuple(expected)
        self.found = found
        super().__init__(f"at position {position}: expected {' or '.join(self.expected)}, found {found}")


class ExprTypeError(ExprError):
    pass


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: float
    imag: bool = False


@dataclass(frozen=True)
class Sigma:
    index: int


@dataclass(frozen=True)
class Matrix:
    rows: tuple  # ((a, b), (c, d)) of scalar alg nodes


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Shift:
    b: object


@dataclass(frozen=True)
class Left:
    l: object


@dataclass(frozen=True)
class Right:
    r: object


@dataclass(frozen=True)
class DPair:
    b: object
    l: object


@dataclass(frozen=True)
class Triple:
    b: object
    l: object
    r: object


@dataclass(frozen=True)
class Star:
    arg: object


@dataclass(frozen=True)
class Compose:
    left: object
    right: object


@dataclass(frozen=True)
class Inverse:
    arg: object


@dataclass(frozen=True)
class Apply:
    group: object
    alg: object


ALG_NODES = (Num, Sigma, Matrix, Neg, Add, Sub, Mul)
GROUP_NODES = (Shift, Left, Right, DPair, Triple, Star, Compose, Inverse)


# ---------------------------------------------------------------- tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, end
    text: str
    pos: int
    value: float = 0.0
    imag: bool = False


_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?P<imag>i(?![A-Za-z0-9_]))?"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<inv>\^-1)"
    r"|(?P<op>[\[\](),*+\-@])"
)


def tokenize(text: str) -> list:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, ["a token"], repr(text[pos]))
        if m.group("num"):
            value = float(m.group("num"))
            if not math.isfinite(value):
                raise ParseError(pos, ["a finite number"], repr(m.group(0)))
            out.append(Token("num", m.group(0), pos, value, bool(m.group("imag"))))
        elif m.group("ident"):
            out.append(Token("ident", m.group(0), pos))
        elif m.group("inv"):
            out.append(Token("op", "^-1", pos))
        elif m.group("op"):
            out.append(Token("op", m.group(0), pos))
        pos = m.end()
    out.append(Token("end", "end of input", len(text)))
    return out


# ---------------------------------------------------------------- parser

_GROUP_HEADS = {"S", "L", "R", "D", "T", "star"}
_SIGMAS = {"sigma0": 0, "sigma1": 1, "sigma2": 2, "sigma3": 3}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, *expected):
        t = self.tok
        raise ParseError(t.pos, expected, "end of input" if t.kind == "end" else repr(t.text))

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def eat(self, text: str):
        if not self.at(text):
            self.fail(repr(text))
        self.i += 1

    def end(self):
        if self.tok.kind != "end":
            self.fail("end of input")

    # group level
    def program(self):
        start = self.i
        t = self.tok
        if (t.kind == "ident" and t.text in _GROUP_HEADS) or self.at("("):
            try:
                g = self.gexpr()
                if self.at("@"):
                    self.i += 1
                    g = Apply(g, self.alg())
                self.end()
                return g
            except ParseError as group_err:
                if not self.at_start_paren(start):
                    raise
                self.i = start
                try:
                    a = self.alg()
                    self.end()
                    return a
                except ParseError as alg_err:
                    raise max(group_err, alg_err, key=lambda e: e.position) from None
        a = self.alg()
        self.end()
        return a

    def at_start_paren(self, start) -> bool:
        t = self.tokens[start]
        return t.kind == "op" and t.text == "("

    def gexpr(self):
        node = self.gterm()
        while self.at("*"):
            self.i += 1
            node = Compose(node, self.gterm())
        return node

    def gterm(self):
        node = self.gatom()
        while self.at("^-1"):
            self.i += 1
            node = Inverse(node)
        return node

    def gatom(self):
        t = self.tok
        if t.kind == "ident" and t.text in ("S", "L", "R"):
            self.i += 1
            self.eat("[")
            a = self.alg()
            self.eat("]")
            return {"S": Shift, "L": Left, "R": Right}[t.text](a)
        if t.kind == "ident" and t.text in ("D", "T"):
            self.i += 1
            self.eat("(")
            args = [self.alg()]
            for _ in range(1 if t.text == "D" else 2):
                self.eat(",")
                args.append(self.alg())
            self.eat(")")
            return DPair(*args) if t.text == "D" else Triple(*args)
        if t.kind == "ident" and t.text == "star":
            self.i += 1
            self.eat("(")
            g = self.gexpr()
            self.eat(")")
            return Star(g)
        if self.at("("):
            self.i += 1
            g = self.gexpr()
            self.eat(")")
            return g
        self.fail("S[", "L[", "R[", "D(", "T(", "star(", "'('")

    # algebra level
    def alg(self):
        node = self.aterm()
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            node = (Add if op == "+" else Sub)(node, self.aterm())
        return node

    def aterm(self):
        node = self.afactor()
        while self.at("*"):
            self.i += 1
            node = Mul(node, self.afactor())
        return node

    def afactor(self):
        t = self.tok
        if self.at("-"):
            self.i += 1
            return Neg(self.afactor())
        if t.kind == "num":
            self.i += 1
            return Num(t.value, t.imag)
        if t.kind == "ident" and t.text == "i":
            self.i += 1
            return Num(1.0, True)
        if t.kind == "ident" and t.text in _SIGMAS:
            self.i += 1
            return Sigma(_SIGMAS[t.text])
        if self.at("["):
            return self.matrix()
        if self.at("("):
            self.i += 1
            a = self.alg()
            self.eat(")")
            return a
        self.fail("a number", "'i'", "sigma0..sigma3", "a matrix literal", "'('", "'-'")

    def matrix(self):
        self.eat("[")
        rows = []
        for r in range(2):
            if r:
                self.eat(",")
            self.eat("[")
            a = self.alg()
            self.eat(",")
            b = self.alg()
            self.eat("]")
            rows.append((a, b))
        self.eat("]")
        return Matrix(tuple(rows))

    def vec4(self):
        self.eat("(")
        out = [self.alg()]
        for _ in range(3):
            self.eat(",")
            out.append(self.alg())
        self.eat(")")
        self.end()
        return out


def parse(text: str):
    """Parse a program into an AST; raises ParseError with position and expected tokens."""
    return _Parser(text).program()


def parse_alg(text: str):
    p = _Parser(text)
    a = p.alg()
    p.end()
    return a


# ---------------------------------------------------------------- pretty printer


def _num(value: float) -> str:
    return repr(float(value))


def pretty(node, _prec: int = 0) -> str:
    """Canonical text; parse(pretty(t)) == t for every tree the parser produces."""
    if isinstance(node, Num):
        return _num(node.value) + ("i" if node.imag else "")
    if isinstance(node, Sigma):
        return f"sigma{node.index}"
    if isinstance(node, Matrix):
        rows = ", ".join("[" + ", ".join(pretty(e) for e in row) + "]" for row in node.rows)
        return f"[{rows}]"
    if isinstance(node, Neg):
        return _wrap("-" + pretty(node.arg, 3), _prec > 3)
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        return _wrap(pretty(node.left, 1) + op + pretty(node.right, 2), _prec > 1)
    if isinstance(node, Mul):
        return _wrap(pretty(node.left, 2) + " * " + pretty(node.right, 3), _prec > 2)
    if isinstance(node, Shift):
        return f"S[{pretty(node.b)}]"
    if isinstance(node, Left):
        return f"L[{pretty(node.l)}]"
    if isinstance(node, Right):
        return f"R[{pretty(node.r)}]"
    if isinstance(node, DPair):
        return f"D({pretty(node.b)}, {pretty(node.l)})"
    if isinstance(node, Triple):
        return f"T({pretty(node.b)}, {pretty(node.l)}, {pretty(node.r)})"
    if isinstance(node, Star):
        return f"star({pretty(node.arg)})"
    if isinstance(node, Compose):
        return _wrap(pretty(node.left, 1) + " * " + pretty(node.right, 2), _prec > 1)
    if isinstance(node, Inverse):
        return pretty(node.arg, 3) + "^-1"
    if isinstance(node, Apply):
        return pretty(node.group) + " @ " + pretty(node.alg)
    raise ExprTypeError(f"not an expression node: {node!r}")


def _wrap(s: str, paren: bool) -> str:
    return f"({s})" if paren else s


# ---------------------------------------------------------------- evaluation


def _scalar(node) -> complex:
    if isinstance(node, Num):
        return complex(0, node.value) if node.imag else complex(node.value)
    if isinstance(node, Neg):
        return -_scalar(node.arg)
    if isinstance(node, Add):
        return _scalar(node.left) + _scalar(node.right)
    if isinstance(node, Sub):
        return _scalar(node.left) - _scalar(node.right)
    if isinstance(node, Mul):
        return _scalar(node.left) * _scalar(node.right)
    raise ExprTypeError(f"matrix entries must be scalars, got {pretty(node)}")


def eval_alg(node) -> AlgebraElement:
    spec = pauli_spec()
    if isinstance(node, Num):
        return _scalar(node) * spec.one()
    if isinstance(node, Sigma):
        return spec.basis(node.index)
    if isinstance(node, Matrix):
        return from_matrix(np.array([[_scalar(e) for e in row] for row in node.rows]), spec)
    if isinstance(node, Neg):
        return -eval_alg(node.arg)
    if isinstance(node, Add):
        return eval_alg(node.left) + eval_alg(node.right)
    if isinstance(node, Sub):
        return eval_alg(node.left) - eval_alg(node.right)
    if isinstance(node, Mul):
        return eval_alg(node.left) * eval_alg(node.right)
    raise ExprTypeError(f"expected an algebra element, got {type(node).__name__}")


def _as_T(x):
    return x.to_T() if isinstance(x, DElement) else x


def eval_group(node):
    if isinstance(node, Shift):
        return DElement.shift(eval_alg(node.b))
    if isinstance(node, Left):
        return DElement.left(eval_alg(node.l))
    if isinstance(node, Right):
        return TElement.right(eval_alg(node.r))
    if isinstance(node, DPair):
        return DElement(eval_alg(node.b), eval_alg(node.l))
    if isinstance(node, Triple):
        return TElement(eval_alg(node.b), eval_alg(node.l), eval_alg(node.r))
    if isinstance(node, Star):
        return star_T(_as_T(eval_group(node.arg)))
    if isinstance(node, Compose):
        x, y = eval_group(node.left), eval_group(node.right)
        if isinstance(x, DElement) and isinstance(y, DElement):
            return compose_D(x, y)
        return compose_T(_as_T(x), _as_T(y))
    if isinstance(node, Inverse):
        x = eval_group(node.arg)
        return invert_D(x) if isinstance(x, DElement) else invert_T(x)
    raise ExprTypeError(f"expected a group element, got {type(node).__name__}")


def evaluate(node):
    """DElement, TElement or AlgebraElement for a parsed program."""
    if isinstance(node, Apply):
        g, a = eval_group(node.group), eval_alg(node.alg)
        return apply_D(g, a) if isinstance(g, DElement) else apply_T(g, a)
    if isinstance(node, GROUP_NODES):
        return eval_group(node)
    return eval_alg(node)


def eval_expr(text: str):
    return evaluate(parse(text))


def parse_matrix(text: str) -> np.ndarray:
    """2 x 2 complex matrix from a matrix literal or any algebra expression."""
    return to_matrix(eval_alg(parse_alg(text)))


def parse_vec4(text: str) -> np.ndarray:
    """``(v0, v1, v2, v3)`` with complex scalar entries; real dtype when all are real."""
    v = np.array([_scalar(e) for e in _Parser(text).vec4()])
    return v.real.copy() if not np.any(v.imag) else v


# ---------------------------------------------------------------- output


def format_complex(z: complex) -> str:
    z = complex(z)
    re_, im = z.real + 0.0, z.imag + 0.0
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{_num(re_)}{sign}{_num(abs(im))}i"


def format_matrix(M) -> str:
    M = np.asarray(M)
    return "[" + ", ".join("[" + ", ".join(format_complex(z) for z in row) + "]" for row in M) + "]"


def format_value(x) -> str:
    """Re-parseable text for an evaluation result."""
    if isinstance(x, AlgebraElement):
        return format_matrix(to_matrix(x))
    if isinstance(x, DElement):
        return f"D({format_matrix(to_matrix(x.B))}, {format_matrix(to_matrix(x.L))})"
    if isinstance(x, TElement):
        return f"T({format_matrix(to_matrix(x.B))}, {format_matrix(to_matrix(x.L))}, {format_matrix(to_matrix(x.R))})"
    raise ExprTypeError(f"cannot format {type(x).__name__}")


__all__ = [
    "ExprError",
    "ParseError",
    "ExprTypeError",
    "AlgebraError",
    "tokenize",
    "parse",
    "parse_alg",
    "pretty",
    "evaluate",
    "eval_expr",
    "eval_alg",
    "eval_group",
    "parse_matrix",
    "parse_vec4",
    "format_value",
    "format_matrix",
    "format_complex",
]
