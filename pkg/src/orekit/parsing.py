"""A small expression reader for operands given on the command line.

Expressions use ``+ - * / ^`` (or ``**``), integers, the variable ``t`` of
F_p(t), the Ore variable ``x``, parentheses, tuples for elements of a
product ring (one entry per factor), nested lists for matrices, and
``eIJ`` or ``e(i,j)`` for matrix units of the shift ring.  Multiplication
is evaluated left to right without reordering, so ``x*t`` and ``t*x``
differ.
"""

from __future__ import annotations

import ast
import re

_UNIT = re.compile(r"^e(\d)(\d)$")


class ParseError(ValueError):
    pass


def _tree(text):
    try:
        return ast.parse(text.replace("^", "**"), mode="eval").body
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None


class Evaluator:
    """Evaluates an expression tree against ``names`` (a dict of values) and
    ``literal`` (a callback turning tuples/lists into ring elements)."""

    def __init__(self, names, literal=None, unit=None):
        self.names = names
        self.literal = literal
        self.unit = unit

    def __call__(self, text):
        return self.eval(_tree(text))

    def eval(self, node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id in self.names:
                return self.names[node.id]
            m = _UNIT.match(node.id)
            if m and self.unit is not None:
                return self.unit(int(m.group(1)), int(m.group(2)))
            raise ParseError(f"unknown name {node.id!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a = self.eval(node.left)
            if isinstance(node.op, ast.Pow):
                e = self.eval(node.right)
                if not isinstance(e, int):
                    raise ParseError("exponents must be integers")
                return a ** e
            b = self.eval(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(a, int) and isinstance(b, int):
                    return self.names["1"] * a / b if "1" in self.names else _int_div(a, b)
                return a / b
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) \
                and node.func.id == "e" and self.unit is not None:
            i, j = (self.eval(a) for a in node.args)
            return self.unit(i, j)
        if isinstance(node, (ast.Tuple, ast.List)) and self.literal is not None:
            return self.literal(self._structure(node))
        raise ParseError(f"unsupported expression: {ast.unparse(node)}")

    def _structure(self, node):
        if isinstance(node, ast.Tuple):
            return tuple(self._structure(e) for e in node.elts)
        if isinstance(node, ast.List):
            return [self._structure(e) for e in node.elts]
        return self.eval(node)


def _int_div(a, b):
    raise ParseError(f"{a}/{b}: integer division needs a field context")


def parse_scalar(field, text):
    """An element of F_p or F_p(t) from text such as "(t^2+1)/t^4"."""
    one = field.one
    names = {"1": one}
    if hasattr(field, "t"):
        names["t"] = field.t
    v = Evaluator(names)(str(text))
    return field.coerce(v)


def parse_ring_element(ring, text):
    """An element of a coefficient ring (field, product ring or shift ring)."""
    from .semisimple import SSRing
    from .shiftring import ShiftRing

    if isinstance(ring, SSRing):
        field = ring.scalar_field or ring.factors[0][1]
        names = {"1": field.one}
        if hasattr(field, "t"):
            names["t"] = field.t
        return ring.coerce(Evaluator(names, literal=lambda v: _ss_literal(ring, v))(text))
    if isinstance(ring, ShiftRing):
        return ring.coerce(Evaluator({}, unit=ring.unit)(text))
    return parse_scalar(ring, text)


def _ss_literal(ring, value):
    if isinstance(value, list):
        if len(ring.factors) != 1:
            raise ParseError("a bare matrix needs a single-factor ring")
        value = (value,)
    return ring.from_literal(list(value))


def parse_skew(ctx, text):
    """An element of R[x; sigma, delta]; coefficient syntax as for the ring."""
    from .semisimple import SSRing
    from .shiftring import ShiftRing

    ring = ctx.ring
    names = {ctx.var: ctx.x}
    unit = None
    literal = None
    if isinstance(ring, SSRing):
        field = ring.scalar_field or ring.factors[0][1]
        names["1"] = ctx.one
        if hasattr(field, "t"):
            names["t"] = ctx.const(ring.coerce(field.t))

        def literal(v):
            return ctx.const(_ss_literal(ring, v))
    elif isinstance(ring, ShiftRing):
        def unit(i, j):
            return ctx.const(ring.unit(i, j))
    else:
        names["1"] = ctx.one
        if hasattr(ring, "t"):
            names["t"] = ctx.const(ring.t)
    v = Evaluator(names, literal=literal, unit=unit)(text)
    return ctx.coerce(v)


def parse_tower(J, text):
    """A Jordan tower element written "(level, body)" or as a plain body."""
    tree = _tree(text)
    if isinstance(tree, ast.Tuple) and len(tree.elts) == 2:
        level = ast.literal_eval(tree.elts[0])
        if not isinstance(level, int) or level < 0:
            raise ParseError("level must be a nonnegative integer")
        body = parse_ring_element(J.base, ast.unparse(tree.elts[1]))
        return J.elem(level, body)
    return J.embed(parse_ring_element(J.base, text))
