"""Exact grid-based transseries over the rationals.

A transmonomial is a product  x^{r0} * l1^{r1} * ... * ld^{rd} * e^L  where
l0 = x, l_{n+1} = log l_n, the exponents are rationals, and L (when present)
is a nonzero exact purely large series of strictly smaller height.  A series
is a finite strictly-decreasing list of nonzero terms plus a tail marker:
either exact, or "truncated below b" meaning the represented value may differ
from the listed sum only by terms asymptotically <= b.  Every listed monomial
is strictly above the bound, so the listed prefix is always reliable.

All values are immutable; every operation is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Callable, Iterable, Optional, Union

from .errors import BothZeroError, IndeterminateSignError

RatLike = Union[Fraction, int, str]

#: Default expansion budget for operations that may produce infinite tails.
DEFAULT_BUDGET = 8


def rat(value: RatLike) -> Fraction:
    """Coerce to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class Transmonomial:
    """Canonical transmonomial.

    Construction normalizes: trailing zero log-exponents are trimmed, and any
    exponent term c*l_{j+1} (a bare iterated log, j >= 0) is absorbed into the
    log part as l_j^c, so exp(log x) = x literally.  The exponent part, when
    present, must be exact, nonzero and purely large (every monomial > 1).
    """

    logexp: tuple[Fraction, ...] = ()
    exppart: Optional["Transseries"] = None

    def __post_init__(self) -> None:
        exps = tuple(rat(r) for r in self.logexp)
        big = self.exppart
        if big is not None:
            if not big.is_exact:
                raise ValueError("transmonomial exponent must be exact")
            absorbed: dict[int, Fraction] = {}
            kept = []
            for t in big.terms:
                j = _bare_log_index(t.monomial)
                if j is not None and j >= 1:
                    absorbed[j - 1] = absorbed.get(j - 1, Fraction(0)) + t.coeff
                else:
                    kept.append(t)
            if absorbed:
                width = max(len(exps), max(absorbed) + 1)
                merged = list(exps) + [Fraction(0)] * (width - len(exps))
                for i, r in absorbed.items():
                    merged[i] += r
                exps = tuple(merged)
                big = Transseries(tuple(kept)) if kept else None
            elif not big.terms:
                big = None
        while exps and not exps[-1]:
            exps = exps[:-1]
        object.__setattr__(self, "logexp", exps)
        object.__setattr__(self, "exppart", big)
        if big is not None:
            for t in big.terms:
                if not is_large(t.monomial):
                    raise ValueError(
                        "transmonomial exponent must be purely large: "
                        f"offending monomial {t.monomial!r}"
                    )

    @property
    def height(self) -> int:
        if self.exppart is None:
            return 0
        return 1 + max(t.monomial.height for t in self.exppart.terms)

    def __hash__(self) -> int:
        # Monomials are hashed constantly (term merging, comparison caches);
        # computing the nested hash once per object matters.
        try:
            return self._hash  # type: ignore[attr-defined]
        except AttributeError:
            h = hash((self.logexp, self.exppart))
            object.__setattr__(self, "_hash", h)
            return h

    def __str__(self) -> str:
        from .printer import format_monomial

        return format_monomial(self)


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    monomial: Transmonomial

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeff", rat(self.coeff))


@dataclass(frozen=True)
class Transseries:
    """Finite term list (strictly decreasing monomials) plus tail marker.

    ``tail_bound is None`` means the series is exact.  Use :func:`series` to
    build one from unsorted data; the raw constructor trusts its arguments.
    """

    terms: tuple[Term, ...] = ()
    tail_bound: Optional[Transmonomial] = None

    @property
    def is_exact(self) -> bool:
        return self.tail_bound is None

    @property
    def is_zero(self) -> bool:
        return not self.terms and self.tail_bound is None

    def leading(self) -> Term:
        if not self.terms:
            raise IndeterminateSignError("series has no listed leading term")
        return self.terms[0]

    def __hash__(self) -> int:
        try:
            return self._hash  # type: ignore[attr-defined]
        except AttributeError:
            h = hash((self.terms, self.tail_bound))
            object.__setattr__(self, "_hash", h)
            return h

    def __str__(self) -> str:
        from .printer import format_series

        return format_series(self)


ONE_MONOMIAL = Transmonomial()
ZERO = Transseries()
ONE = Transseries((Term(Fraction(1), ONE_MONOMIAL),))


def _bare_log_index(m: Transmonomial) -> Optional[int]:
    """Index j when m is exactly l_j to the first power, else None."""
    if m.exppart is not None or not m.logexp:
        return None
    if m.logexp[-1] != 1 or any(r for r in m.logexp[:-1]):
        return None
    return len(m.logexp) - 1


def ell(n: int) -> Transmonomial:
    """The n-th iterated logarithm as a monomial: ell(0) = x, ell(n+1) = log ell(n)."""
    if n < 0:
        raise ValueError("iterated-log index must be >= 0")
    return Transmonomial((Fraction(0),) * n + (Fraction(1),))


def monomial(logexp: Iterable[RatLike] = (), exppart: Optional[Transseries] = None) -> Transmonomial:
    return Transmonomial(tuple(rat(r) for r in logexp), exppart)


def series(
    pairs: Iterable[tuple[RatLike, Transmonomial]],
    tail_bound: Optional[Transmonomial] = None,
) -> Transseries:
    """Collect (coefficient, monomial) pairs into a canonical series.

    Equal monomials are merged, zero coefficients dropped, terms sorted in
    strictly decreasing monomial order, and any term at or below the tail
    bound is folded into the tail.
    """
    acc: dict[Transmonomial, Fraction] = {}
    for coeff, mono in pairs:
        c = rat(coeff)
        if mono in acc:
            acc[mono] += c
        else:
            acc[mono] = c
    terms = [Term(c, m) for m, c in acc.items() if c]
    if tail_bound is not None:
        terms = [t for t in terms if cmp_monomial(t.monomial, tail_bound) > 0]
    terms.sort(key=cmp_to_key(lambda a, b: cmp_monomial(a.monomial, b.monomial)), reverse=True)
    return Transseries(tuple(terms), tail_bound)


def constant(c: RatLike) -> Transseries:
    c = rat(c)
    return Transseries((Term(c, ONE_MONOMIAL),)) if c else ZERO


def mono_series(m: Transmonomial, coeff: RatLike = 1) -> Transseries:
    return series([(coeff, m)])


# ---------------------------------------------------------------------------
# ordering


def cmp_monomial(m1: Transmonomial, m2: Transmonomial) -> int:
    """Total order on canonical monomials: +1 when m1 grows faster than m2.

    Realized by comparing log m1 and log m2 as series; two pure log-monomials
    compare lexicographically on their exponent vectors (x dominates log x
    dominates log log x ...).
    """
    if m1.exppart is None and m2.exppart is None:
        a, b = m1.logexp, m2.logexp
        for i in range(max(len(a), len(b))):
            x = a[i] if i < len(a) else 0
            y = b[i] if i < len(b) else 0
            if x != y:
                return 1 if x > y else -1
        return 0
    if m1 == m2:
        return 0
    return _cmp_by_log(m1, m2)


@lru_cache(maxsize=None)
def _cmp_by_log(m1: Transmonomial, m2: Transmonomial) -> int:
    # All monomials of log m have smaller height, so this recursion grounds
    # out in the lexicographic base case.
    return sign(sub(log_series(m1), log_series(m2)))


@lru_cache(maxsize=None)
def log_series(m: Transmonomial) -> Transseries:
    """log of a monomial: sum of r_i * l_{i+1} plus its exponent part.  Exact."""
    s = series((r, ell(i + 1)) for i, r in enumerate(m.logexp) if r)
    if m.exppart is not None:
        s = add(s, m.exppart)
    return s


def is_large(m: Transmonomial) -> bool:
    """True when m > 1."""
    return cmp_monomial(m, ONE_MONOMIAL) > 0


def _max_mono(monos: list[Transmonomial]) -> Transmonomial:
    best = monos[0]
    for m in monos[1:]:
        if cmp_monomial(m, best) > 0:
            best = m
    return best


# ---------------------------------------------------------------------------
# ring operations


@lru_cache(maxsize=None)
def mono_mul(m1: Transmonomial, m2: Transmonomial) -> Transmonomial:
    a, b = m1.logexp, m2.logexp
    if len(a) < len(b):
        a, b = b, a
    exps = tuple(x + y for x, y in zip(a, b)) + a[len(b):]
    if m1.exppart is None:
        big = m2.exppart
    elif m2.exppart is None:
        big = m1.exppart
    else:
        big = add(m1.exppart, m2.exppart)
        if not big.terms:
            big = None
    return Transmonomial(exps, big)


def mono_pow(m: Transmonomial, r: RatLike) -> Transmonomial:
    r = rat(r)
    if not r:
        return ONE_MONOMIAL
    big = scale(m.exppart, r) if m.exppart is not None else None
    return Transmonomial(tuple(e * r for e in m.logexp), big)


def add(f: Transseries, g: Transseries) -> Transseries:
    """Coefficientwise merge; the tail bound is the larger of the two bounds."""
    bound = None
    if f.tail_bound is not None or g.tail_bound is not None:
        cands = [b for b in (f.tail_bound, g.tail_bound) if b is not None]
        bound = _max_mono(cands)
    pairs = [(t.coeff, t.monomial) for t in f.terms]
    pairs += [(t.coeff, t.monomial) for t in g.terms]
    return series(pairs, bound)


def neg(f: Transseries) -> Transseries:
    return Transseries(tuple(Term(-t.coeff, t.monomial) for t in f.terms), f.tail_bound)


def sub(f: Transseries, g: Transseries) -> Transseries:
    return add(f, neg(g))


def scale(f: Transseries, c: RatLike) -> Transseries:
    c = rat(c)
    if not c:
        return ZERO
    return Transseries(tuple(Term(c * t.coeff, t.monomial) for t in f.terms), f.tail_bound)


def mul(f: Transseries, g: Transseries) -> Transseries:
    """Distributive product.  Exact times exact is exact; truncation bounds
    propagate as (bound of one factor) * (leading monomial of the other),
    keeping the larger candidate."""
    if f.is_zero or g.is_zero:
        return ZERO
    cands = []
    if f.tail_bound is not None:
        other = g.terms[0].monomial if g.terms else g.tail_bound
        cands.append(mono_mul(f.tail_bound, other))
    if g.tail_bound is not None:
        other = f.terms[0].monomial if f.terms else f.tail_bound
        cands.append(mono_mul(g.tail_bound, other))
    bound = _max_mono(cands) if cands else None
    pairs = [
        (tf.coeff * tg.coeff, mono_mul(tf.monomial, tg.monomial))
        for tf in f.terms
        for tg in g.terms
    ]
    return series(pairs, bound)


def _attach_bound(f: Transseries, bound: Optional[Transmonomial]) -> Transseries:
    if bound is None:
        return f
    if f.tail_bound is not None:
        bound = _max_mono([bound, f.tail_bound])
    return series(((t.coeff, t.monomial) for t in f.terms), bound)


def geometric_sum(
    eps: Transseries, budget: int, coeff_at: Callable[[int], Fraction]
) -> Transseries:
    """sum_{1 <= n <= budget} coeff_at(n) * eps^n for an infinitesimal eps,
    with the tail bound at the scale of the first omitted power.

    Powers are pruned against the final bound as they are built: a dropped
    term only ever influences terms at or below the bound, since every
    monomial of eps is below 1.
    """
    cap = mono_pow(eps.terms[0].monomial, budget + 1) if eps.terms else None
    pairs: list[tuple[Fraction, Transmonomial]] = []
    bounds: list[Transmonomial] = []
    pw = ONE
    for n in range(1, budget + 1):
        pw = mul(pw, eps)
        if cap is not None:
            pw = _attach_bound(pw, cap)
        if pw.tail_bound is not None:
            bounds.append(pw.tail_bound)
        if not pw.terms:
            break
        c = coeff_at(n)
        pairs.extend((c * t.coeff, t.monomial) for t in pw.terms)
    return series(pairs, _max_mono(bounds) if bounds else None)


def inverse(f: Transseries, budget: int = DEFAULT_BUDGET) -> Transseries:
    """Multiplicative inverse: write f = c*m*(1+eps) and expand the geometric
    series to the given budget.  Exact when eps = 0."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if f.is_zero:
        raise ZeroDivisionError("inverse of the zero series")
    lead = f.leading()
    lead_inv = mono_series(mono_pow(lead.monomial, -1), 1 / lead.coeff)
    eps = mul(Transseries(f.terms[1:], f.tail_bound), lead_inv)
    if eps.is_zero:
        return lead_inv
    acc = add(ONE, geometric_sum(eps, budget, lambda n: Fraction((-1) ** n)))
    return mul(lead_inv, acc)


def power(f: Transseries, k: int) -> Transseries:
    """Nonnegative integer power by repeated squaring."""
    if k < 0:
        raise ValueError("use inverse() for negative powers")
    out = ONE
    base = f
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base) if k > 1 else base
        k >>= 1
    return out


# ---------------------------------------------------------------------------
# decomposition, dominance, sign


def decompose(f: Transseries) -> tuple[Transseries, Fraction, Transseries]:
    """Split f = g + c + eps into infinite part, constant term, infinitesimal part.

    The three supports are disjoint and re-add to f exactly.  A truncation
    bound below 1 stays with eps; a bound at or above 1 stays with g (the
    constant term is then unreliable and reported as 0).
    """
    large = []
    small = []
    const = Fraction(0)
    for t in f.terms:
        c = cmp_monomial(t.monomial, ONE_MONOMIAL)
        if c > 0:
            large.append(t)
        elif c == 0:
            const = t.coeff
        else:
            small.append(t)
    b = f.tail_bound
    if b is None:
        return Transseries(tuple(large)), const, Transseries(tuple(small))
    if cmp_monomial(b, ONE_MONOMIAL) < 0:
        return Transseries(tuple(large)), const, Transseries(tuple(small), b)
    return Transseries(tuple(large), b), Fraction(0), ZERO


def sign(f: Transseries) -> int:
    """Sign of the leading coefficient; 0 only for the exact zero series."""
    if f.terms:
        return 1 if f.terms[0].coeff > 0 else -1
    if f.is_exact:
        return 0
    raise IndeterminateSignError("sign of a truncated series with no listed terms")


def compare_dominance(f: Transseries, g: Transseries) -> int:
    """Asymptotic comparison via leading monomials: -1 for f < g (f grows
    strictly slower), 0 for f ~ g, +1 for f > g.  Zero is below everything."""
    f_zero = f.is_zero
    g_zero = g.is_zero
    if f_zero and g_zero:
        raise BothZeroError("dominance comparison of two zero series")
    if f_zero:
        return -1
    if g_zero:
        return 1
    return cmp_monomial(f.leading().monomial, g.leading().monomial)


def dominates(f: Transseries, g: Transseries) -> bool:
    """f is asymptotically at least g (g is dominated by f)."""
    return compare_dominance(f, g) >= 0
