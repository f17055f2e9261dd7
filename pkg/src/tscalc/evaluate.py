"""Evaluation of parsed expressions against the engine.

Pure series expressions evaluate to a Transseries; expressions mentioning Y
evaluate to a DiffPolynomial (series embed as the constant-index coefficient).
Division and the unary functions demand series operands; inexact steps
(division by a multi-term series, exp/log with an infinitesimal part) respect
the supplied budget.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from . import calculus, explog
from .diffpoly import DiffPolynomial, diff_poly, dp_add, dp_mul, dp_neg, dp_pow, dp_scale, y_derivative
from .errors import EvalError
from .hfield import iota
from .parser import (
    Binary,
    Expr,
    LambdaAtom,
    LogAtom,
    Num,
    OmegaAtom,
    Power,
    Unary,
    VarX,
    YAtom,
)
from .series import (
    DEFAULT_BUDGET,
    Transseries,
    constant,
    ell,
    inverse,
    mono_pow,
    mono_series,
    mul,
    neg,
    power,
    add,
    sub,
)

Value = Union[Transseries, DiffPolynomial]


def _as_series(v: Value, what: str) -> Transseries:
    if isinstance(v, Transseries):
        return v
    raise EvalError(f"{what} needs a series, not a differential polynomial")


def _as_poly(v: Value) -> DiffPolynomial:
    if isinstance(v, DiffPolynomial):
        return v
    return diff_poly({(): v})


def _nth_root(value: int, n: int) -> int | None:
    """Exact integer n-th root, or None."""
    if value < 0:
        return None
    if value in (0, 1):
        return value
    lo, hi = 0, 1 << ((value.bit_length() + n - 1) // n + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**n < value:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**n == value else None


def rational_power(q: Fraction, r: Fraction) -> Fraction:
    """q**r when the result is rational, else raises EvalError."""
    if r.denominator == 1:
        if q == 0 and r < 0:
            raise EvalError("zero to a negative power")
        return q**r.numerator
    base = q**r.numerator
    sign = 1
    if base < 0:
        if r.denominator % 2 == 0:
            raise EvalError(f"({q})^({r}) is not rational")
        sign, base = -1, -base
    num = _nth_root(base.numerator, r.denominator)
    den = _nth_root(base.denominator, r.denominator)
    if num is None or den is None:
        raise EvalError(f"({q})^({r}) is not rational")
    return Fraction(sign * num, den)


def _series_power(f: Transseries, r: Fraction, budget: int) -> Transseries:
    if r.denominator == 1:
        k = r.numerator
        if k >= 0:
            return power(f, k)
        return power(inverse(f, budget), -k)
    if len(f.terms) != 1 or not f.is_exact:
        raise EvalError("fractional powers apply only to single exact terms")
    t = f.terms[0]
    return mono_series(mono_pow(t.monomial, r), rational_power(t.coeff, r))


_SERIES_UNARY = {
    "exp": lambda f, budget: explog.exp(f, budget),
    "log": lambda f, budget: explog.log(f, budget),
    "derive": lambda f, budget: calculus.derive(f),
    "up": lambda f, budget: calculus.upward_shift(f),
    "down": lambda f, budget: calculus.downward_shift(f),
    "iota": lambda f, budget: iota(f, budget),
}


def evaluate(expr: Expr, budget: int = DEFAULT_BUDGET) -> Value:
    if isinstance(expr, Num):
        return constant(expr.value)
    if isinstance(expr, VarX):
        return mono_series(ell(0))
    if isinstance(expr, LogAtom):
        return mono_series(ell(expr.depth))
    if isinstance(expr, LambdaAtom):
        return explog.lambda_series(expr.index)
    if isinstance(expr, OmegaAtom):
        return explog.omega_series(expr.index)
    if isinstance(expr, YAtom):
        return y_derivative(expr.order)
    if isinstance(expr, Unary):
        if expr.op == "neg":
            v = evaluate(expr.arg, budget)
            return neg(v) if isinstance(v, Transseries) else dp_neg(v)
        f = _as_series(evaluate(expr.arg, budget), expr.op)
        return _SERIES_UNARY[expr.op](f, budget)
    if isinstance(expr, Binary):
        lhs = evaluate(expr.left, budget)
        rhs = evaluate(expr.right, budget)
        if expr.op in ("add", "sub"):
            if isinstance(lhs, Transseries) and isinstance(rhs, Transseries):
                return add(lhs, rhs) if expr.op == "add" else sub(lhs, rhs)
            p, q = _as_poly(lhs), _as_poly(rhs)
            return dp_add(p, q) if expr.op == "add" else dp_add(p, dp_neg(q))
        if expr.op == "mul":
            if isinstance(lhs, Transseries) and isinstance(rhs, Transseries):
                return mul(lhs, rhs)
            return dp_mul(_as_poly(lhs), _as_poly(rhs))
        if expr.op == "div":
            divisor = _as_series(rhs, "division")
            inv = inverse(divisor, budget)
            if isinstance(lhs, Transseries):
                return mul(lhs, inv)
            return dp_scale(lhs, inv)
        raise EvalError(f"unknown operator {expr.op!r}")
    if isinstance(expr, Power):
        base = evaluate(expr.base, budget)
        if isinstance(base, Transseries):
            return _series_power(base, expr.exponent, budget)
        r = expr.exponent
        if r.denominator != 1 or r < 0:
            raise EvalError("polynomial powers must be nonnegative integers")
        return dp_pow(base, r.numerator)
    raise EvalError(f"unknown expression node {expr!r}")


def evaluate_series(expr: Expr, budget: int = DEFAULT_BUDGET) -> Transseries:
    v = evaluate(expr, budget)
    if isinstance(v, DiffPolynomial):
        raise EvalError("expression is a differential polynomial, not a series")
    return v
