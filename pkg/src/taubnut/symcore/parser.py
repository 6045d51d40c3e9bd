"""Plain-text math syntax.

Infix arithmetic with ``^`` (or ``**``) for powers, ``sin cos tan cot csc sec
sqrt``, and formal functions written ``A(r)``, ``A'(r)``, ``A''(r)``.  Greek
letters ``ψ θ φ`` are accepted for ``psi theta phi``.  Any other bare name is a
coordinate if it is one of the chart names below (or already declared as a
coordinate) and a parameter otherwise.

The same tree can be evaluated directly in ball arithmetic by
:func:`eval_tree`; that path never touches the canonicalizer and serves as the
oracle for it.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Mapping

import flint

from . import expr as _e
from .expr import Expr, SymcoreError, _POOL
from .numeric import _normalize_point, default_precision, precision

__all__ = ["parse", "parse_tree", "tree_to_expr", "eval_tree", "ParseError", "COORDINATES"]

COORDINATES = ("r", "rp", "psi", "theta", "phi", "psi_p", "psi_pp", "t", "x", "y", "z")

_GREEK = {"ψ": "psi", "θ": "theta", "φ": "phi", "ϕ": "phi", "′": "'", "″": "''", "−": "-", "·": "*"}
_DERIV = re.compile(r"([A-Za-z_]\w*)('+)\s*\(")


class ParseError(SymcoreError, ValueError):
    pass


def _preprocess(text: str) -> str:
    for k, v in _GREEK.items():
        text = text.replace(k, v)
    text = text.replace("^", "**")
    return _DERIV.sub(lambda m: f"{m.group(1)}__d{len(m.group(2))}(", text)


def parse_tree(text: str) -> ast.expr:
    try:
        return ast.parse(_preprocess(text), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from exc


def _is_coordinate(name: str) -> bool:
    if name in COORDINATES:
        return True
    i = _POOL.index.get(name)
    return i is not None and _POOL.symbols[i].kind == "coordinate"


def _name_expr(name: str) -> Expr:
    return _e.coordinate(name) if _is_coordinate(name) else _e.parameter(name)


def _split_func(name: str) -> tuple[str, int]:
    if "__d" in name:
        base, order = name.split("__d")
        return base, int(order)
    return name, 0


_TRIG = {
    "sin": lambda x: _e.sin(x),
    "cos": lambda x: _e.cos(x),
    "tan": lambda x: _e.sin(x) / _e.cos(x),
    "cot": lambda x: _e.cos(x) / _e.sin(x),
    "csc": lambda x: 1 / _e.sin(x),
    "sec": lambda x: 1 / _e.cos(x),
}


def tree_to_expr(node: ast.AST) -> Expr:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ParseError(f"unsupported literal {node.value!r}")
        return _e.const(Fraction(repr(node.value)) if isinstance(node.value, float) else node.value)
    if isinstance(node, ast.Name):
        return _name_expr(node.id)
    if isinstance(node, ast.UnaryOp):
        v = tree_to_expr(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
    if isinstance(node, ast.BinOp):
        a = tree_to_expr(node.left)
        if isinstance(node.op, ast.Pow):
            k = tree_to_expr(node.right)
            if not k.is_rational() or k.to_fraction().denominator not in (1, 2):
                raise ParseError("exponents must be integers or halves")
            q = k.to_fraction()
            if q.denominator == 2:
                return _e.sqrt(a) ** q.numerator
            return a ** int(q)
        b = tree_to_expr(node.right)
        ops = {ast.Add: a.__add__, ast.Sub: a.__sub__, ast.Mult: a.__mul__, ast.Div: a.__truediv__}
        for cls, fn in ops.items():
            if isinstance(node.op, cls):
                return fn(b)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1:
        fname = node.func.id
        if fname in _TRIG:
            return _TRIG[fname](tree_to_expr(node.args[0]))
        if fname == "sqrt":
            return _e.sqrt(tree_to_expr(node.args[0]))
        arg = node.args[0]
        if not isinstance(arg, ast.Name) or not _is_coordinate(arg.id):
            raise ParseError(f"formal function {fname} must be applied to a coordinate")
        _e.coordinate(arg.id)
        base, order = _split_func(fname)
        return _e.function(base, arg.id, order)
    raise ParseError(f"unsupported syntax: {ast.dump(node)}")


def parse(text: str) -> Expr:
    """Parse text into a canonical :class:`Expr`."""
    return tree_to_expr(parse_tree(text))


def _func_key(fname: str) -> str:
    base, order = _split_func(fname)
    return base if order == 0 else f"{base}_{order}"


def _tree_eval(node: ast.AST, pt: Mapping[str, flint.arb]) -> flint.arb:
    if isinstance(node, ast.Constant):
        v = node.value
        if isinstance(v, float):
            v = Fraction(repr(v))
        return flint.arb(flint.fmpq(Fraction(v).numerator, Fraction(v).denominator))
    if isinstance(node, ast.Name):
        if node.id not in pt:
            raise _e.DomainError(f"no value for {node.id}")
        return pt[node.id]
    if isinstance(node, ast.UnaryOp):
        v = _tree_eval(node.operand, pt)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a = _tree_eval(node.left, pt)
        if isinstance(node.op, ast.Pow):
            k = tree_to_expr(node.right).to_fraction()
            if k.denominator == 2:
                if not a > 0 and not a.is_zero():
                    raise _e.DomainError("non-positive base under a half power")
                return a.sqrt() ** k.numerator
            k = int(k)
            if k < 0:
                return 1 / a ** (-k)
            return a**k
        b = _tree_eval(node.right, pt)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b.contains(0):
                raise _e.DomainError("division by a ball containing zero")
            return a / b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        fname = node.func.id
        if fname in _TRIG or fname == "sqrt":
            x = _tree_eval(node.args[0], pt)
            if fname == "sqrt":
                if x.is_zero():
                    return flint.arb(0)
                if not x > 0:
                    raise _e.DomainError("sqrt of a ball that is not positive")
                return x.sqrt()
            s, c = x.sin(), x.cos()
            return {"sin": s, "cos": c, "tan": s / c, "cot": c / s, "csc": 1 / s, "sec": 1 / c}[fname]
        key = _func_key(fname)
        if key not in pt:
            raise _e.DomainError(f"no value for {key}")
        return pt[key]
    raise ParseError(f"unsupported syntax: {ast.dump(node)}")


def eval_tree(tree: ast.AST | str, point: Mapping, bits: int | None = None) -> flint.arb:
    """Evaluate an unsimplified tree in ball arithmetic.

    Formal functions are looked up by key: ``A`` for ``A(r)``, ``A_1`` for
    ``A'(r)``, ``A_2`` for ``A''(r)``.
    """
    if isinstance(tree, str):
        tree = parse_tree(tree)
    bits = bits or default_precision()
    with precision(bits):
        return _tree_eval(tree, _normalize_point(point))
