"""Exponential and logarithm of series, and the iterated-log cut sequences.

exp splits its argument as f = g + c + eps and returns e^g * sum eps^n/n!
up to the budget; the rational field forces c = 0 (e^c would be irrational).
log requires a positive monic leading term and uses the alternating series
log(1+eps) = eps - eps^2/2 + eps^3/3 - ... plus the exact log of the leading
monomial.

lambda_series(n) and omega_series(n) are the cut sequences
1/l0 + 1/(l0 l1) + ... + 1/(l0...ln)  and its squared-denominator analogue;
the membership predicates compare against them up to a budget and decide a
negative only through the positive-gap rule (otherwise the honest verdict is
Unknown).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import IndeterminateSignError, NonRationalConstantError, NotPositiveError
from .series import (
    DEFAULT_BUDGET,
    ONE,
    Transmonomial,
    Transseries,
    add,
    cmp_monomial,
    decompose,
    geometric_sum,
    log_series,
    mono_pow,
    mono_series,
    mul,
    series,
    sign,
    sub,
)


def exp(f: Transseries, budget: int = DEFAULT_BUDGET) -> Transseries:
    """e^f for a series with zero constant term; exact when the infinitesimal
    part vanishes."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    big, const, eps = decompose(f)
    if not big.is_exact:
        raise IndeterminateSignError("constant term hidden by the truncation bound")
    if const:
        raise NonRationalConstantError(f"e^{const} is not rational")
    head = mono_series(Transmonomial((), big if big.terms else None))
    if eps.is_zero:
        return head
    factorial = [Fraction(1)]
    for n in range(1, budget + 1):
        factorial.append(factorial[-1] * n)
    tail = add(ONE, geometric_sum(eps, budget, lambda n: 1 / factorial[n]))
    return mul(head, tail)


def log(f: Transseries, budget: int = DEFAULT_BUDGET) -> Transseries:
    """log f for a positive series with leading coefficient 1."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if sign(f) != 1:
        raise NotPositiveError("log of a non-positive series")
    lead = f.leading()
    if lead.coeff != 1:
        raise NonRationalConstantError(f"log of leading coefficient {lead.coeff} is not rational")
    head = log_series(lead.monomial)
    eps = mul(Transseries(f.terms[1:], f.tail_bound), mono_series(mono_pow(lead.monomial, -1)))
    if eps.is_zero:
        return head
    tail = geometric_sum(eps, budget, lambda n: Fraction((-1) ** (n + 1), n))
    return add(head, tail)


def _cut_monomial(n: int, exponent: int) -> Transmonomial:
    return Transmonomial((Fraction(exponent),) * (n + 1))


def lambda_series(n: int) -> Transseries:
    """1/l0 + 1/(l0 l1) + ... + 1/(l0...ln); exact, n+1 terms."""
    if n < 0:
        raise ValueError("index must be >= 0")
    return series((1, _cut_monomial(k, -1)) for k in range(n + 1))


def omega_series(n: int) -> Transseries:
    """1/(l0)^2 + 1/(l0 l1)^2 + ... + 1/(l0...ln)^2; exact, n+1 terms."""
    if n < 0:
        raise ValueError("index must be >= 0")
    return series((1, _cut_monomial(k, -2)) for k in range(n + 1))


@dataclass(frozen=True)
class PredVerdict:
    """Outcome of a cut-membership probe.

    ``yes`` carries the least witnessing index found; ``no`` is only reported
    when provable; ``unknown`` means the budget was exhausted.
    """

    outcome: str  # "yes" | "no" | "unknown"
    witness: Optional[int] = None

    @property
    def is_yes(self) -> bool:
        return self.outcome == "yes"

    @property
    def is_no(self) -> bool:
        return self.outcome == "no"

    @property
    def is_unknown(self) -> bool:
        return self.outcome == "unknown"


def _cut_pred(
    f: Transseries,
    budget: int,
    seq: Callable[[int], Transseries],
    exponent: int,
) -> PredVerdict:
    if not f.is_exact:
        raise ValueError("cut predicates require an exact series")
    for n in range(budget + 1):
        if sign(sub(seq(n), f)) == 1:
            return PredVerdict("yes", n)
    # f >= every probed stage.  The gap d = f - seq(budget) decides a No when
    # its positive leading term dominates every later stage increment, all of
    # which sit at or below the next cut monomial.
    d = sub(f, seq(budget))
    if d.terms and d.terms[0].coeff > 0:
        if cmp_monomial(d.terms[0].monomial, _cut_monomial(budget + 1, exponent)) > 0:
            return PredVerdict("no")
    return PredVerdict("unknown")


def lambda_pred(f: Transseries, budget: int) -> PredVerdict:
    """Is f < lambda_series(n) for some n?  Semi-decided up to the budget."""
    return _cut_pred(f, budget, lambda_series, -1)


def omega_pred(f: Transseries, budget: int) -> PredVerdict:
    """Is f < omega_series(n) for some n?  Semi-decided up to the budget."""
    return _cut_pred(f, budget, omega_series, -2)
