"""Termwise differentiation and composition with exp / log.

The derivative of a monomial m = x^{r0} * l1^{r1} * ... * e^L is m times its
logarithmic derivative  sum_i r_i/(l0...l_i) + L', using l0' = 1 and
l_i' = 1/(l0...l_{i-1}).  Differentiation is exact on exact input; a
truncated input keeps a conservatively derived bound.

The upward shift substitutes e^x for x (relabeling l_{i+1} -> l_i, with x^r
factors migrating into the exponent), the downward shift substitutes log x
(the inverse relabeling); they are mutually inverse on exact series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .series import (
    ZERO,
    Transmonomial,
    Transseries,
    _max_mono,
    add,
    ell,
    mono_mul,
    mono_series,
    mul,
    series,
)


@lru_cache(maxsize=None)
def log_derivative(m: Transmonomial) -> Transseries:
    """m'/m as an exact series; zero exactly for m = 1."""
    s = series(
        (r, Transmonomial((Fraction(-1),) * (i + 1)))
        for i, r in enumerate(m.logexp)
        if r
    )
    if m.exppart is not None:
        s = add(s, derive(m.exppart))
    return s


def derive(f: Transseries) -> Transseries:
    """Termwise derivative."""
    pairs = []
    for t in f.terms:
        for u in log_derivative(t.monomial).terms:
            pairs.append((t.coeff * u.coeff, mono_mul(t.monomial, u.monomial)))
    bound = None
    b = f.tail_bound
    if b is not None:
        cands = [b]
        ld = log_derivative(b)
        if ld.terms:
            cands.append(mono_mul(ld.terms[0].monomial, b))
        bound = _max_mono(cands)
    return series(pairs, bound)


def _require_exact(f: Transseries, what: str) -> None:
    if f.tail_bound is not None:
        raise ValueError(f"{what} requires an exact series")


def _mono_up(m: Transmonomial) -> Transmonomial:
    big = ZERO
    if m.logexp and m.logexp[0]:
        big = mono_series(ell(0), m.logexp[0])
    if m.exppart is not None:
        big = add(big, upward_shift(m.exppart))
    return Transmonomial(m.logexp[1:], big if big.terms else None)


def _mono_down(m: Transmonomial) -> Transmonomial:
    big: Optional[Transseries] = None
    if m.exppart is not None:
        big = downward_shift(m.exppart)
    # Bare-log exponent terms produced by the shift are re-absorbed into the
    # log part by the monomial constructor.
    return Transmonomial((Fraction(0),) + m.logexp, big)


def upward_shift(f: Transseries) -> Transseries:
    """Substitute e^x for x."""
    _require_exact(f, "upward shift")
    return series((t.coeff, _mono_up(t.monomial)) for t in f.terms)


def downward_shift(f: Transseries) -> Transseries:
    """Substitute log x for x; inverse of the upward shift."""
    _require_exact(f, "downward shift")
    return series((t.coeff, _mono_down(t.monomial)) for t in f.terms)
