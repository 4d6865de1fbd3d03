"""Expression language for separable Hamiltonians H = K(p) + V(x).

A small recursive-descent parser for scalar expressions in one variable.
Precedence, tightest first: ``^`` (right-associative), unary minus, ``*``
and ``/``, then ``+`` and ``-``.  The function set is fixed; ``pi`` and
``e`` are predefined constants.  ASTs are immutable and evaluation is pure,
so parsed Hamiltonians are safely shareable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import EvaluationError, ExpressionError

__all__ = [
    "ExprNode",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "parse",
    "format_expr",
    "eval_grid",
    "HamiltonianSpec",
]

FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "tanh": np.tanh,
    "cosh": np.cosh,
    "sinh": np.sinh,
    "abs": np.abs,
}

CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "ExprNode"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "ExprNode"
    right: "ExprNode"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "ExprNode"


ExprNode = Union[Num, Var, Neg, BinOp, Call]


# -- tokenizer ---------------------------------------------------------------

_OPERATORS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, offset) triples; kinds: num, ident, op, end."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPERATORS:
            tokens.append(("op", c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    j = k
                    while j < n and text[j].isdigit():
                        j += 1
            lexeme = text[i:j]
            try:
                float(lexeme)
            except ValueError:
                raise ExpressionError(f"malformed number {lexeme!r} at offset {i}", i)
            tokens.append(("num", lexeme, i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ExpressionError(f"unexpected character {c!r} at offset {i}", i)
    tokens.append(("end", "", n))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, variable: str):
        self.text = text
        self.variable = variable
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, off = self.peek()
        if kind != "op" or value != op:
            raise ExpressionError(
                f"expected {op!r} at offset {off}, found {value or 'end of input'!r}", off
            )
        return self.advance()

    def parse(self) -> ExprNode:
        node = self.expr()
        kind, value, off = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected token {value!r} at offset {off}", off)
        return node

    def expr(self) -> ExprNode:
        node = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                node = BinOp(value, node, self.term())
            else:
                return node

    def term(self) -> ExprNode:
        node = self.unary()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "*/":
                self.advance()
                node = BinOp(value, node, self.unary())
            else:
                return node

    def unary(self) -> ExprNode:
        kind, value, _ = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> ExprNode:
        base = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            # right-associative; exponent may carry its own unary minus
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> ExprNode:
        kind, value, off = self.advance()
        if kind == "num":
            return Num(float(value))
        if kind == "ident":
            if value in FUNCTIONS:
                nxt_kind, nxt_value, nxt_off = self.peek()
                if nxt_kind != "op" or nxt_value != "(":
                    raise ExpressionError(
                        f"expected '(' after function {value} at offset {nxt_off}", nxt_off
                    )
                self.advance()
                arg = self.expr()
                self.expect_op(")")
                return Call(value, arg)
            if value in CONSTANTS:
                return Num(CONSTANTS[value])
            if value == self.variable:
                return Var(value)
            raise ExpressionError(f"unknown identifier {value} at offset {off}", off)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        found = value if value else "end of input"
        raise ExpressionError(f"expected a value at offset {off}, found {found!r}", off)


def parse(text: str, variable_name: str) -> ExprNode:
    """Parse ``text`` into an AST over the single permitted variable."""
    if not text or not text.strip():
        raise ExpressionError("empty expression", 0)
    return _Parser(text, variable_name).parse()


# -- printer -----------------------------------------------------------------

_PREC = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_NEG_PREC = 30
_ATOM_PREC = 100


def _prec(node: ExprNode) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Num) and node.value < 0:
        return _NEG_PREC
    return _ATOM_PREC


def format_expr(node: ExprNode) -> str:
    """Render with minimal parentheses; reparsing reproduces the structure."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}({format_expr(node.arg)})"
    if isinstance(node, Neg):
        inner = format_expr(node.operand)
        if _prec(node.operand) < _NEG_PREC:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = format_expr(node.left)
        right = format_expr(node.right)
        # '^' is right-associative, the rest are left-associative; equal
        # precedence on the non-associated side needs parentheses to keep
        # the reparse structurally identical.
        if _prec(node.left) < p or (_prec(node.left) == p and node.op == "^"):
            left = f"({left})"
        if _prec(node.right) < p or (_prec(node.right) == p and node.op != "^"):
            right = f"({right})"
        return f"{left}{node.op}{right}"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluator ---------------------------------------------------------------


def _eval(node: ExprNode, samples: np.ndarray) -> np.ndarray:
    if isinstance(node, Num):
        return np.asarray(node.value, dtype=np.float64)
    if isinstance(node, Var):
        return samples
    if isinstance(node, Neg):
        return -_eval(node.operand, samples)
    if isinstance(node, Call):
        return FUNCTIONS[node.name](_eval(node.arg, samples))
    if isinstance(node, BinOp):
        left = _eval(node.left, samples)
        right = _eval(node.right, samples)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            return left / right
        if node.op == "^":
            return np.power(left, right)
    raise TypeError(f"not an expression node: {node!r}")


def eval_grid(node: ExprNode, samples) -> np.ndarray:
    """Evaluate element-wise over ``samples``; result has the same shape.

    Raises EvaluationError at genuine singularities (division by zero, log of
    a non-positive value, fractional powers of negatives, overflow to inf),
    carrying the first offending sample value.
    """
    arr = np.asarray(samples, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        raise EvaluationError("samples contain non-finite values")
    with np.errstate(all="ignore"):
        result = _eval(node, arr)
    result = np.broadcast_to(np.asarray(result, dtype=np.float64), arr.shape)
    bad = ~np.isfinite(result)
    if bad.any():
        sample = float(arr[bad][0]) if arr.shape else float(arr)
        raise EvaluationError(
            f"singular evaluation at sample {sample!r}: expression value is not finite",
            sample,
        )
    return np.array(result, dtype=np.float64)


@dataclass(frozen=True)
class HamiltonianSpec:
    """Parsed V(x) and K(p) with the source strings retained."""

    v_ast: ExprNode
    k_ast: ExprNode
    v_source: str
    k_source: str

    @classmethod
    def from_strings(cls, v_text: str, k_text: str) -> "HamiltonianSpec":
        return cls(
            v_ast=parse(v_text, "x"),
            k_ast=parse(k_text, "p"),
            v_source=v_text,
            k_source=k_text,
        )

    def potential(self, samples) -> np.ndarray:
        return eval_grid(self.v_ast, samples)

    def kinetic(self, samples) -> np.ndarray:
        return eval_grid(self.k_ast, samples)
