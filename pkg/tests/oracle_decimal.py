"""Independent expression-tree evaluator on libmpdec (the decimal module).

Shares no code or kernels with the mpmath-backed interval layer, which is
the point: the fuzz campaign checks that a 200-digit decimal evaluation of
every random expression tree lands inside the returned Bound.

Tree encoding: ("leaf", p, q) | (unary_op, child) |
(binary_op, left, right) | ("pow_rational", child, p, q).
"""

import decimal
from decimal import Decimal

UNARY = ("exp", "log", "cosh", "sinh", "sqrt")
BINARY = ("add", "sub", "mul", "div", "min", "max")


class DecimalEvaluator:
    def __init__(self, digits=200):
        self.ctx = decimal.Context(prec=digits, Emax=10 ** 9, Emin=-(10 ** 9))

    def eval(self, tree) -> Decimal:
        """Evaluate; ctx.flags[decimal.Inexact] reports whether any rounding
        occurred (clear the flags before calling to use that)."""
        ctx = self.ctx
        kind = tree[0]
        if kind == "leaf":
            _, p, q = tree
            return ctx.divide(Decimal(p), Decimal(q))
        if kind in UNARY:
            x = self.eval(tree[1])
            if kind == "exp":
                return ctx.exp(x)
            if kind == "log":
                return ctx.ln(x)
            if kind == "sqrt":
                return ctx.sqrt(x)
            e = ctx.exp(x)
            f = ctx.exp(ctx.minus(x))
            if kind == "cosh":
                return ctx.divide(ctx.add(e, f), Decimal(2))
            return ctx.divide(ctx.subtract(e, f), Decimal(2))
        if kind in BINARY:
            a = self.eval(tree[1])
            b = self.eval(tree[2])
            if kind == "add":
                return ctx.add(a, b)
            if kind == "sub":
                return ctx.subtract(a, b)
            if kind == "mul":
                return ctx.multiply(a, b)
            if kind == "div":
                return ctx.divide(a, b)
            if kind == "min":
                return ctx.min(a, b)
            return ctx.max(a, b)
        if kind == "pow_rational":
            _, child, p, q = tree
            x = self.eval(child)
            if q == 1:
                return self.ctx.power(x, Decimal(p))
            exponent = self.ctx.divide(Decimal(p), Decimal(q))
            return self.ctx.power(x, exponent)
        raise ValueError(f"unknown node kind {kind!r}")

    def clear_inexact(self):
        self.ctx.clear_flags()

    def was_inexact(self) -> bool:
        return bool(self.ctx.flags[decimal.Inexact])
