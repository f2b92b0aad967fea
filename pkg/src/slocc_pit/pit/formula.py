"""Arithmetic formulas: AST, recursive-descent parser and printer.

Grammar (whitespace is insignificant)::

    formula  := term { ("+" | "-") term }
    term     := factor { "*" factor }
    factor   := "(" formula ")" | "-" factor | variable | constant
    variable := "x" nonzero-digit { digit }
    constant := integer [ "/" positive-integer ]

Subtraction and negation are desugared while parsing: ``a - b`` becomes
``a + (-1)*b`` and ``-f`` becomes ``(-1)*f``. Each inserted -1 is a leaf.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..errors import FormulaSyntaxError
from ..linalg import GaussianRational
from ..oracle import MultiPoly


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "value", GaussianRational.coerce(self.value))


@dataclass(frozen=True)
class Add:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Mul:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Const, Add, Mul]

MINUS_ONE = Const(GaussianRational(-1))


def size(f: Formula) -> int:
    """Leaf count e."""
    stack, e = [f], 0
    while stack:
        node = stack.pop()
        if isinstance(node, (Add, Mul)):
            stack.extend((node.left, node.right))
        else:
            e += 1
    return e


def num_vars(f: Formula) -> int:
    """Largest variable index m (0 when the formula is constant)."""
    stack, m = [f], 0
    while stack:
        node = stack.pop()
        if isinstance(node, (Add, Mul)):
            stack.extend((node.left, node.right))
        elif isinstance(node, Var):
            m = max(m, node.index)
    return m


def expand(f: Formula, nvars: int = None) -> MultiPoly:
    """Multiply out the formula into a sparse polynomial in x_1..x_nvars."""
    if nvars is None:
        nvars = num_vars(f)
    if isinstance(f, Var):
        return MultiPoly.variable(f.index - 1, nvars)
    if isinstance(f, Const):
        return MultiPoly.constant(f.value, nvars)
    if isinstance(f, Add):
        return expand(f.left, nvars) + expand(f.right, nvars)
    return expand(f.left, nvars) * expand(f.right, nvars)


# lexer

@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "var", "op", "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str):
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(_Token("num", text[i:j], line, start_col))
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            digits = text[i + 1:j]
            if not digits:
                raise FormulaSyntaxError("variable needs an index, e.g. x1", line, start_col)
            if digits[0] == "0":
                if int(digits) == 0:
                    raise FormulaSyntaxError("variable index 0 (indices start at 1)", line, start_col)
                raise FormulaSyntaxError(f"variable index {digits!r} has a leading zero", line, start_col)
            tokens.append(_Token("var", text[i:j], line, start_col))
        elif ch in "+-*/()":
            j = i + 1
            tokens.append(_Token("op", ch, line, start_col))
        else:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", line, start_col)
        col += j - i
        i = j
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        return FormulaSyntaxError(f"{message}, found {found}", tok.line, tok.column)

    def formula(self):
        node = self.term()
        while self.peek.kind == "op" and self.peek.text in "+-":
            op = self.take().text
            rhs = self.term()
            node = Add(node, rhs if op == "+" else Mul(MINUS_ONE, rhs))
        return node

    def term(self):
        node = self.factor()
        while self.peek.kind == "op" and self.peek.text == "*":
            self.take()
            node = Mul(node, self.factor())
        return node

    def factor(self):
        tok = self.peek
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.formula()
            if not (self.peek.kind == "op" and self.peek.text == ")"):
                raise self.error("expected ')'")
            self.take()
            return node
        if tok.kind == "op" and tok.text == "-":
            self.take()
            return Mul(MINUS_ONE, self.factor())
        if tok.kind == "var":
            self.take()
            return Var(int(tok.text[1:]))
        if tok.kind == "num":
            self.take()
            value = Fraction(int(tok.text))
            if self.peek.kind == "op" and self.peek.text == "/":
                self.take()
                den = self.peek
                if den.kind != "num":
                    raise self.error("expected a denominator")
                self.take()
                if int(den.text) == 0:
                    raise FormulaSyntaxError("zero denominator", den.line, den.column)
                value /= int(den.text)
            return Const(GaussianRational(value))
        raise self.error("expected a variable, constant, '-' or '('")


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    node = parser.formula()
    if parser.peek.kind != "eof":
        raise parser.error("expected '+', '-', '*' or end of input")
    return node


# printer; output reparses to an identical tree

def _is_neg(f):
    return isinstance(f, Mul) and f.left == MINUS_ONE


def _const_text(c: Const) -> str:
    v = c.value
    if v.im != 0 or v.re < 0:
        raise ValueError(f"constant {v} has no literal form in the formula grammar")
    return str(v.re)


def _factor_text(f) -> str:
    if isinstance(f, Var):
        return f"x{f.index}"
    if isinstance(f, Const):
        return _const_text(f)
    if _is_neg(f):
        return "-" + _factor_text(f.right)
    return "(" + to_text(f) + ")"


def _term_text(f) -> str:
    if isinstance(f, Add):
        return "(" + to_text(f) + ")"
    if isinstance(f, Mul) and not _is_neg(f):
        return _term_text(f.left) + "*" + _factor_text(f.right)
    return _factor_text(f)


def to_text(f: Formula) -> str:
    """Print a formula so that ``parse_formula(to_text(f)) == f``.

    Raises ValueError for trees containing constants the grammar cannot
    spell (negative or non-real values other than the desugared -1).
    """
    if isinstance(f, Add):
        if _is_neg(f.right):
            return to_text(f.left) + " - " + _term_text(f.right.right)
        return to_text(f.left) + " + " + _term_text(f.right)
    return _term_text(f)
