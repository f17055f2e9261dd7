"""Differential polynomials in Y, Y', ..., Y^(r) with series coefficients.

Supports ring arithmetic, evaluation at a series, compositional conjugation
(rewriting in terms of a rescaled derivation phi*d), extraction of the
dominant part, and the stabilization probe that drives the dominant part to
a constant-coefficient polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .calculus import derive
from .errors import IndeterminateDominanceError
from .series import (
    DEFAULT_BUDGET,
    ONE,
    ZERO,
    Transmonomial,
    Transseries,
    add,
    cmp_monomial,
    constant,
    inverse,
    mono_series,
    mul,
    neg,
    power,
    scale,
    series,
)

DiffIndex = tuple[int, ...]


def diff_index(exponents: Iterable[int]) -> DiffIndex:
    idx = tuple(int(e) for e in exponents)
    if any(e < 0 for e in idx):
        raise ValueError("derivative exponents must be >= 0")
    while idx and idx[-1] == 0:
        idx = idx[:-1]
    return idx


def index_degree(idx: DiffIndex) -> int:
    return sum(idx)


def _index_mul(a: DiffIndex, b: DiffIndex) -> DiffIndex:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def _sort_key(idx: DiffIndex, width: int):
    # Derivative-major: higher Y^(k) factors print and store first.
    return tuple(reversed(idx + (0,) * (width - len(idx))))


@dataclass(frozen=True)
class DiffPolynomial:
    """Immutable map from derivative-exponent indices to series coefficients.

    Index (i0, i1, ..., ir) stands for Y^{i0} (Y')^{i1} ... (Y^(r))^{ir}.
    Build with :func:`diff_poly`; the raw constructor trusts its argument.
    """

    terms: tuple[tuple[DiffIndex, Transseries], ...] = ()

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((len(idx) - 1 for idx, _ in self.terms), default=0)

    @property
    def degree(self) -> int:
        return max((index_degree(idx) for idx, _ in self.terms), default=0)

    def coefficient(self, exponents: Iterable[int]) -> Transseries:
        idx = diff_index(exponents)
        for i, c in self.terms:
            if i == idx:
                return c
        return ZERO

    def is_constant_coefficients(self) -> bool:
        return all(
            c.is_exact and all(not t.monomial.logexp and t.monomial.exppart is None for t in c.terms)
            for _, c in self.terms
        )

    def __str__(self) -> str:
        from .printer import format_series

        if not self.terms:
            return "0"
        parts = []
        for idx, coeff in self.terms:
            factors = []
            for k, e in enumerate(idx):
                if e:
                    base = "Y" + "'" * k
                    factors.append(base if e == 1 else f"{base}^{e}")
            ypart = "*".join(factors)
            if not ypart:
                parts.append(f"({format_series(coeff)})")
            elif coeff == ONE:
                parts.append(ypart)
            elif len(coeff.terms) == 1 and coeff.is_exact:
                parts.append(f"{format_series(coeff)}*{ypart}")
            else:
                parts.append(f"({format_series(coeff)})*{ypart}")
        return " + ".join(parts)


def diff_poly(
    coeffs: Union[Mapping[DiffIndex, Transseries], Iterable[tuple[DiffIndex, Transseries]]]
) -> DiffPolynomial:
    items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
    acc: dict[DiffIndex, Transseries] = {}
    for idx, c in items:
        idx = diff_index(idx)
        acc[idx] = add(acc[idx], c) if idx in acc else c
    entries = [(idx, c) for idx, c in acc.items() if not c.is_zero]
    width = max((len(idx) for idx, _ in entries), default=0)
    entries.sort(key=lambda item: _sort_key(item[0], width), reverse=True)
    return DiffPolynomial(tuple(entries))


Y = diff_poly({(1,): ONE})
DP_ZERO = DiffPolynomial()


def y_derivative(k: int) -> DiffPolynomial:
    """The variable Y^(k) as a polynomial."""
    return diff_poly({(0,) * k + (1,): ONE})


def dp_add(p: DiffPolynomial, q: DiffPolynomial) -> DiffPolynomial:
    return diff_poly(list(p.terms) + list(q.terms))


def dp_neg(p: DiffPolynomial) -> DiffPolynomial:
    return DiffPolynomial(tuple((idx, neg(c)) for idx, c in p.terms))


def dp_sub(p: DiffPolynomial, q: DiffPolynomial) -> DiffPolynomial:
    return dp_add(p, dp_neg(q))


def dp_scale(p: DiffPolynomial, f: Transseries) -> DiffPolynomial:
    if f.is_zero:
        return DP_ZERO
    return diff_poly((idx, mul(c, f)) for idx, c in p.terms)


def dp_mul(p: DiffPolynomial, q: DiffPolynomial) -> DiffPolynomial:
    out: list[tuple[DiffIndex, Transseries]] = []
    for ia, ca in p.terms:
        for ib, cb in q.terms:
            out.append((_index_mul(ia, ib), mul(ca, cb)))
    return diff_poly(out)


def dp_pow(p: DiffPolynomial, k: int) -> DiffPolynomial:
    if k < 0:
        raise ValueError("polynomial power must be >= 0")
    out = diff_poly({(): ONE})
    for _ in range(k):
        out = dp_mul(out, p)
    return out


def evaluate(P: DiffPolynomial, f: Transseries, budget: Optional[int] = None) -> Transseries:
    """Substitute f, f', ..., f^(r) for the variables and expand.

    The budget parameter is accepted for interface parity and unused: a
    polynomial never expands an infinite tail on its own, and truncation
    bounds propagate through the ring operations.
    """
    del budget
    derivs = [f]
    for _ in range(P.order):
        derivs.append(derive(derivs[-1]))
    total = ZERO
    for idx, coeff in P.terms:
        v = coeff
        for k, e in enumerate(idx):
            for _ in range(e):
                v = mul(v, derivs[k])
        total = add(total, v)
    return total


def conjugate(P: DiffPolynomial, phi: Transseries, budget: int = DEFAULT_BUDGET) -> DiffPolynomial:
    """Rewrite P in terms of the rescaled derivation d^ = phi * d.

    Uses c[1][1] = 1/phi and c[k+1][i] = derive(c[k][i]) + (1/phi) * c[k][i-1],
    so that the k-th derivative of Y becomes sum_i c[k][i] * Y^hat^(i).  Exact
    whenever phi is a single term (phi inverse is then exact); otherwise the
    inverse is expanded to the given budget.
    """
    if phi.is_zero:
        raise ZeroDivisionError("conjugation by the zero series")
    if not phi.is_exact:
        raise ValueError("conjugation requires an exact series")
    phi_inv = inverse(phi, budget)
    rows: list[dict[int, Transseries]] = [{0: ONE}]
    for _ in range(P.order):
        prev = rows[-1]
        nxt: dict[int, Transseries] = {}
        for i, c in prev.items():
            d = derive(c)
            if not d.is_zero:
                nxt[i] = add(nxt[i], d) if i in nxt else d
            shifted = mul(phi_inv, c)
            nxt[i + 1] = add(nxt[i + 1], shifted) if i + 1 in nxt else shifted
        rows.append(nxt)
    images = [
        diff_poly({(0,) * i + (1,): c for i, c in row.items()})
        for row in rows
    ]
    images[0] = Y
    total = DP_ZERO
    for idx, coeff in P.terms:
        part = diff_poly({(): coeff})
        for k, e in enumerate(idx):
            for _ in range(e):
                part = dp_mul(part, images[k])
        total = dp_add(total, part)
    return total


def dominant_part(P: DiffPolynomial) -> tuple[Transmonomial, DiffPolynomial]:
    """Largest leading monomial among the coefficients, and the constant-
    coefficient polynomial collecting the leading rationals at that scale."""
    if P.is_zero:
        raise ValueError("dominant part of the zero polynomial")
    leads = []
    for idx, coeff in P.terms:
        if not coeff.terms:
            raise IndeterminateDominanceError(
                f"coefficient of index {idx} is hidden below its truncation bound"
            )
        leads.append((idx, coeff.terms[0]))
    a = leads[0][1].monomial
    for _, t in leads[1:]:
        if cmp_monomial(t.monomial, a) > 0:
            a = t.monomial
    D = diff_poly(
        (idx, constant(t.coeff)) for idx, t in leads if t.monomial == a
    )
    return a, D


@dataclass(frozen=True)
class NewtonResult:
    """Stabilized probe outcome, or the last dominant part when the level
    budget ran out (level is None)."""

    poly: DiffPolynomial
    level: Optional[int]

    @property
    def stabilized(self) -> bool:
        return self.level is not None


def _scale_normalized(D: DiffPolynomial) -> DiffPolynomial:
    """Quotient by overall positive rational scaling: first |coefficient| = 1."""
    first = D.terms[0][1].terms[0].coeff
    return diff_poly((idx, scale(c, 1 / abs(first))) for idx, c in D.terms)


def newton_poly(P: DiffPolynomial, max_level: int) -> NewtonResult:
    """Probe with the scalers phi_n = 1/(l0...ln) until two consecutive levels
    agree up to positive scaling."""
    if P.is_zero:
        raise ValueError("probe of the zero polynomial")
    prev: Optional[DiffPolynomial] = None
    for n in range(max_level + 1):
        phi = mono_series(Transmonomial((Fraction(-1),) * (n + 1)))
        _, D = dominant_part(conjugate(P, phi))
        D = _scale_normalized(D)
        if prev is not None and prev == D:
            return NewtonResult(D, n)
        prev = D
    assert prev is not None
    return NewtonResult(prev, None)


@dataclass(frozen=True)
class ShapeVerdict:
    """Shape classification of a constant-coefficient polynomial.

    separable_power is n when the polynomial equals A(Y) * (Y')^n for a
    univariate A; quasilinear marks total degree 1.  Neither set means Other.
    """

    separable_power: Optional[int]
    quasilinear: bool

    @property
    def is_other(self) -> bool:
        return self.separable_power is None and not self.quasilinear


def shape_check(N: DiffPolynomial) -> ShapeVerdict:
    if N.is_zero:
        raise ValueError("shape of the zero polynomial")
    separable: Optional[int] = None
    if all(len(idx) <= 2 for idx, _ in N.terms):
        powers = {idx[1] if len(idx) == 2 else 0 for idx, _ in N.terms}
        if len(powers) == 1:
            separable = powers.pop()
    quasilinear = N.degree == 1
    return ShapeVerdict(separable, quasilinear)
