"""Exact transseries and surreal-number arithmetic."""

from .errors import (
    BothZeroError,
    EvalError,
    IndeterminateDominanceError,
    IndeterminateSignError,
    NonRationalConstantError,
    NotBoundedError,
    NotPositiveError,
    NotSeparatedError,
    ParseError,
    TransseriesError,
)
from .series import (
    DEFAULT_BUDGET,
    ONE,
    ONE_MONOMIAL,
    ZERO,
    Term,
    Transmonomial,
    Transseries,
    add,
    cmp_monomial,
    compare_dominance,
    constant,
    decompose,
    ell,
    inverse,
    is_large,
    log_series,
    mono_mul,
    mono_pow,
    mono_series,
    monomial,
    mul,
    neg,
    power,
    rat,
    scale,
    series,
    sign,
    sub,
)

__all__ = [name for name in dir() if not name.startswith("_")]
