"""Small infix expression language for functions, fields, forms and kernels.

Grammar (a subset of Python expression syntax)::

    expr    := expr ('+' | '-' | '*' | '/') expr | expr ('^' | '**') expr
             | ('-' | '+') expr | call | NAME | NUMBER | '(' expr ')'
    call    := ('sin' | 'cos' | 'exp' | 'log' | 'sqrt') '(' expr ')'
             | 'pow' '(' expr ',' expr ')'
    NAME    := z1 .. zd | w1 .. wd | pi | e | i

``z1..zd`` are the coordinates of the (first) point, ``w1..wd`` those of the
second kernel slot.  Expressions compile to callables that accept numbers or
jets, so derivatives come from the jet combinators.
"""
from __future__ import annotations

import ast
import math
import operator
import re
from typing import Callable

from . import jets

__all__ = ["ExpressionError", "compile_expression"]

_FUNCS = {
    "sin": (1, jets.sin),
    "cos": (1, jets.cos),
    "exp": (1, jets.exp),
    "log": (1, jets.log),
    "sqrt": (1, jets.sqrt),
    "pow": (2, jets.power),
}
_CONSTS = {"pi": math.pi, "e": math.e, "i": 1j}
_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_VAR = re.compile(r"([zw])([1-9][0-9]*)$")


class ExpressionError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1, source: str = ""):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
        self.source = source


def _power(a, b):
    if isinstance(b, float) and b.is_integer():
        b = int(b)
    return jets.power(a, b)


def _compile(node, dim: int, slots: str, src: str) -> Callable:
    def fail(msg, n=node):
        raise ExpressionError(msg, getattr(n, "lineno", 1), getattr(n, "col_offset", 0) + 1, src)

    if isinstance(node, ast.Expression):
        return _compile(node.body, dim, slots, src)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            fail(f"unsupported literal {node.value!r}")
        value = float(node.value)
        return lambda z, w: value
    if isinstance(node, ast.Name):
        m = _VAR.match(node.id)
        if m:
            slot, k = m.group(1), int(m.group(2)) - 1
            if slot not in slots:
                fail(f"variable {node.id} not available here")
            if k >= dim:
                fail(f"variable {node.id} exceeds dimension {dim}")
            return (lambda z, w: z[k]) if slot == "z" else (lambda z, w: w[k])
        if node.id in _CONSTS:
            value = _CONSTS[node.id]
            return lambda z, w: value
        fail(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp):
        inner = _compile(node.operand, dim, slots, src)
        if isinstance(node.op, ast.USub):
            return lambda z, w: -inner(z, w)
        if isinstance(node.op, ast.UAdd):
            return inner
        fail("unsupported unary operator")
    if isinstance(node, ast.BinOp):
        a = _compile(node.left, dim, slots, src)
        b = _compile(node.right, dim, slots, src)
        if isinstance(node.op, ast.Pow):
            return lambda z, w: _power(a(z, w), b(z, w))
        op = _BINOPS.get(type(node.op))
        if op is None:
            fail("unsupported binary operator")
        return lambda z, w: op(a(z, w), b(z, w))
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS:
            fail("unknown function")
        if node.keywords:
            fail("keyword arguments are not allowed")
        arity, fn = _FUNCS[node.func.id]
        if len(node.args) != arity:
            fail(f"{node.func.id} takes {arity} argument(s)")
        args = [_compile(a, dim, slots, src) for a in node.args]
        if arity == 1:
            (a,) = args
            return lambda z, w: fn(a(z, w))
        a, b = args
        return lambda z, w: _power(a(z, w), b(z, w))
    fail(f"unsupported syntax: {type(node).__name__}")


def _translate(text: str) -> tuple[str, list[list[int]]]:
    """Replace ``^`` by ``**``; also return, per line, the original 1-based
    column of every translated character (plus one past the end)."""
    out, cols = [], []
    for line in text.split("\n"):
        buf, col = [], []
        for j, ch in enumerate(line, start=1):
            if ch == "^":
                buf.append("**")
                col += [j, j]
            else:
                buf.append(ch)
                col.append(j)
        col.append(len(line) + 1)
        out.append("".join(buf))
        cols.append(col)
    return "\n".join(out), cols


def _column(cols: list[list[int]], line: int, column: int) -> int:
    row = cols[min(max(line, 1), len(cols)) - 1]
    return row[min(max(column, 1), len(row)) - 1]


def compile_expression(text: str, dim: int, slots: str = "z") -> Callable:
    """Compile ``text``; the result is called as ``f(z)`` (or ``f(z, w)`` for ``slots="zw"``)."""
    # '^' must bind like '**', not like Python's xor
    if not text.strip():
        raise ExpressionError("empty expression", 1, 1, text)
    src, cols = _translate(text)
    try:
        # the wrapping parentheses allow line breaks and leading blanks
        tree = ast.parse("(" + src + "\n)", mode="eval")
    except SyntaxError as exc:
        line, offset = exc.lineno or 1, exc.offset or 1
        if line > len(cols):  # ran into the closing parenthesis: input ended early
            line, offset = len(cols), len(cols[-1]) + (len(cols) == 1)
        raise ExpressionError(f"syntax error: {exc.msg}", line,
                              _column(cols, line, offset - (line == 1)),
                              text) from None
    try:
        fn = _compile(tree, dim, slots, text)
    except ExpressionError as exc:
        raise ExpressionError(str(exc).rsplit(" (line", 1)[0], exc.line,
                              _column(cols, exc.line, exc.column - (exc.line == 1)),
                              text) from None
    if slots == "zw":
        return fn
    return lambda z: fn(z, None)
