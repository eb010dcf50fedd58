"""Tiny arithmetic grammar for beam-shape expressions ``h(beta)``.

Accepted: numeric constants, the variable ``beta`` (also ``β`` or ``b``),
``+``, ``-``, ``*`` (or ``·``), ``/``, powers ``^`` or ``**``, unary minus
and parentheses.  Anything else is rejected before evaluation.
"""

from __future__ import annotations

import ast
import operator

import numpy as np

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNARY = {ast.USub: operator.neg, ast.UAdd: operator.pos}
_NAMES = {"beta", "b"}


class ShapeSyntaxError(ValueError):
    pass


def _normalise(text: str) -> str:
    return text.replace("β", "beta").replace("·", "*").replace("^", "**").strip()


def _check(node: ast.AST) -> None:
    if isinstance(node, ast.Expression):
        _check(node.body)
    elif isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        _check(node.left)
        _check(node.right)
    elif isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
        _check(node.operand)
    elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
            and not isinstance(node.value, bool):
        pass
    elif isinstance(node, ast.Name) and node.id in _NAMES:
        pass
    else:
        raise ShapeSyntaxError(f"unsupported construct in shape expression: {ast.dump(node)}")


def _eval(node: ast.AST, beta):
    if isinstance(node, ast.Expression):
        return _eval(node.body, beta)
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_eval(node.left, beta), _eval(node.right, beta))
    if isinstance(node, ast.UnaryOp):
        return _UNARY[type(node.op)](_eval(node.operand, beta))
    if isinstance(node, ast.Constant):
        return float(node.value)
    return beta


class ShapeExpression:
    """Vectorised callable built from a shape expression string."""

    def __init__(self, text: str):
        self.text = text
        try:
            tree = ast.parse(_normalise(text), mode="eval")
        except SyntaxError as exc:
            raise ShapeSyntaxError(f"malformed shape expression {text!r}") from exc
        _check(tree)
        self._tree = tree

    def __call__(self, beta):
        beta = np.asarray(beta, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = _eval(self._tree, beta)
        return np.broadcast_to(np.asarray(out, dtype=float), beta.shape)

    def __repr__(self):
        return f"ShapeExpression({self.text!r})"


def parse_shape(text: str) -> ShapeExpression:
    return ShapeExpression(text)
