"""Deterministic canonical text rendering.

Terms print in decreasing monomial order with reciprocal spelling for
negative exponents ("1/x + 1/(x*l1)", "3*l1/(2*x)"); a truncation tail prints
as "+ O(m)" with the bound monomial spelled in signed-exponent style exactly
as stored ("O(x^-2)").  parse(format_series(f)) evaluates back to f for every
exact f.
"""

from __future__ import annotations

from fractions import Fraction

from .series import Transmonomial, Transseries


def _pow_text(base: str, r: Fraction) -> str:
    if r == 1:
        return base
    if r.denominator == 1 and r >= 0:
        return f"{base}^{r.numerator}"
    if r.denominator == 1:
        return f"{base}^{r.numerator}"
    return f"{base}^({r})"


def _log_name(i: int) -> str:
    return "x" if i == 0 else f"l{i}"


def format_monomial(m: Transmonomial) -> str:
    """Signed-exponent spelling, used for O(...) bounds and standalone monomials."""
    factors = [
        _pow_text(_log_name(i), r) for i, r in enumerate(m.logexp) if r
    ]
    if m.exppart is not None:
        factors.append(f"e^({format_series(m.exppart)})")
    return "*".join(factors) if factors else "1"


def _format_term(coeff: Fraction, m: Transmonomial) -> str:
    """Magnitude of one term in reciprocal spelling (sign handled by the caller)."""
    num: list[str] = []
    den: list[str] = []
    c = abs(coeff)
    if c.numerator != 1:
        num.append(str(c.numerator))
    if c.denominator != 1:
        den.append(str(c.denominator))
    for i, r in enumerate(m.logexp):
        if r > 0:
            num.append(_pow_text(_log_name(i), r))
        elif r < 0:
            den.append(_pow_text(_log_name(i), -r))
    if m.exppart is not None:
        num.append(f"e^({format_series(m.exppart)})")
    num_text = "*".join(num) if num else "1"
    if not den:
        return num_text
    den_text = den[0] if len(den) == 1 else "(" + "*".join(den) + ")"
    return f"{num_text}/{den_text}"


def format_series(f: Transseries) -> str:
    parts: list[str] = []
    for t in f.terms:
        body = _format_term(t.coeff, t.monomial)
        if not parts:
            parts.append(f"-{body}" if t.coeff < 0 else body)
        else:
            parts.append(f"- {body}" if t.coeff < 0 else f"+ {body}")
    if f.tail_bound is not None:
        tail = f"O({format_monomial(f.tail_bound)})"
        parts.append(f"+ {tail}" if parts else tail)
    if not parts:
        return "0"
    return " ".join(parts)


def format_dominance(rel: int) -> str:
    """<<, ~~ or >> for the three-way asymptotic comparison."""
    return {-1: "<<", 0: "~~", 1: ">>"}[rel]
