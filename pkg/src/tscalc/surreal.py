"""Exact arithmetic on finite sign sequences (surreal numbers of finite
birthday, i.e. dyadic rationals).

A surreal is a tuple over {+1, -1}.  Ordering is lexicographic with
end-of-sequence ranking strictly between - and +.  A sequence is simpler than
another when it is a proper initial segment.  Arithmetic follows the Conway
recursions over the canonical options (the proper prefixes, split into those
below and above the number), resolved through the simplest element of the
resulting cut.

Each displayed option family is monotone in each of its option arguments, so
only the extremal prefix on each side can decide the cut; the recursions
evaluate just those candidates.  Results are memoized; the functions stay
observationally pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

from .errors import NotSeparatedError

SignSeq = tuple[int, ...]

EMPTY: SignSeq = ()


def signs(text: str) -> SignSeq:
    """Parse a sign sequence from a +- string ('0' or '' denotes zero)."""
    if text in ("", "0"):
        return EMPTY
    out = []
    for ch in text:
        if ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        else:
            raise ValueError(f"sign sequences use only '+' and '-': {text!r}")
    return tuple(out)


def signs_text(a: SignSeq) -> str:
    return "".join("+" if s > 0 else "-" for s in a)


def cmp_signs(a: SignSeq, b: SignSeq) -> int:
    """Lexicographic order; a missing entry ranks between - and +."""
    for x, y in zip(a, b):
        if x != y:
            return 1 if x > y else -1
    if len(a) == len(b):
        return 0
    if len(a) > len(b):
        return a[len(b)]
    return -b[len(a)]


def simpler(b: SignSeq, a: SignSeq) -> bool:
    """True when b is a proper initial segment of a."""
    return len(b) < len(a) and a[: len(b)] == b


def left_options(a: SignSeq) -> list[SignSeq]:
    """Canonical lower options: prefixes of a that are below a."""
    return [a[:i] for i in range(len(a)) if a[i] > 0]


def right_options(a: SignSeq) -> list[SignSeq]:
    """Canonical upper options: prefixes of a that are above a."""
    return [a[:i] for i in range(len(a)) if a[i] < 0]


def _max_left(a: SignSeq) -> Optional[SignSeq]:
    for i in range(len(a) - 1, -1, -1):
        if a[i] > 0:
            return a[:i]
    return None


def _min_right(a: SignSeq) -> Optional[SignSeq]:
    for i in range(len(a) - 1, -1, -1):
        if a[i] < 0:
            return a[:i]
    return None


def simplest_between(left: Iterable[SignSeq], right: Iterable[SignSeq]) -> SignSeq:
    """The unique shortest sign sequence strictly between max(left) and
    min(right) (every shorter sequence falls outside the cut).

    Walks the sign tree: append + while at or below the lower bound, - while
    at or above the upper bound; the first prefix strictly inside the cut is
    the simplest element.  The bound comparisons are tracked incrementally.
    """
    lo: Optional[SignSeq] = None
    for s in left:
        if lo is None or cmp_signs(s, lo) > 0:
            lo = s
    hi: Optional[SignSeq] = None
    for s in right:
        if hi is None or cmp_signs(s, hi) < 0:
            hi = s
    if lo is not None and hi is not None and cmp_signs(lo, hi) >= 0:
        raise NotSeparatedError(
            f"cut is not separated: {signs_text(lo) or '0'} >= {signs_text(hi) or '0'}"
        )
    out: list[int] = []
    # None while out is still a prefix of the bound, else the resolved order.
    rel_lo: Optional[int] = None
    rel_hi: Optional[int] = None

    def current(rel: Optional[int], bound: SignSeq) -> int:
        if rel is not None:
            return rel
        if len(out) == len(bound):
            return 0
        return -bound[len(out)]

    def updated(rel: Optional[int], bound: SignSeq, s: int) -> Optional[int]:
        if rel is not None:
            return rel
        n = len(out)
        if n == len(bound):
            return s
        if bound[n] == s:
            return None
        return 1 if s > bound[n] else -1

    while True:
        if lo is not None and current(rel_lo, lo) <= 0:
            step = 1
        elif hi is not None and current(rel_hi, hi) >= 0:
            step = -1
        else:
            return tuple(out)
        if lo is not None:
            rel_lo = updated(rel_lo, lo, step)
        if hi is not None:
            rel_hi = updated(rel_hi, hi, step)
        out.append(step)


def neg(a: SignSeq) -> SignSeq:
    return tuple(-s for s in a)


_ADD_MEMO: dict[tuple[SignSeq, SignSeq], SignSeq] = {}
_MUL_MEMO: dict[tuple[SignSeq, SignSeq], SignSeq] = {}


def add(a: SignSeq, b: SignSeq) -> SignSeq:
    """Conway sum {aL + b, a + bL | aR + b, a + bR}."""
    if not a:
        return b
    if not b:
        return a
    key = (a, b) if a <= b else (b, a)
    hit = _ADD_MEMO.get(key)
    if hit is not None:
        return hit
    lows = []
    highs = []
    aL, aR = _max_left(a), _min_right(a)
    bL, bR = _max_left(b), _min_right(b)
    if aL is not None:
        lows.append(add(aL, b))
    if bL is not None:
        lows.append(add(a, bL))
    if aR is not None:
        highs.append(add(aR, b))
    if bR is not None:
        highs.append(add(a, bR))
    out = simplest_between(lows, highs)
    _ADD_MEMO[key] = out
    return out


def sub(a: SignSeq, b: SignSeq) -> SignSeq:
    return add(a, neg(b))


def mul(a: SignSeq, b: SignSeq) -> SignSeq:
    """Conway product via the four displayed option families.

    Family (aL, bL) as a lower option:  aL*b + a*bL - aL*bL;  family (aR, bR)
    likewise; upper options mix one lower with one upper prefix.
    """
    if not a or not b:
        return EMPTY
    key = (a, b) if a <= b else (b, a)
    hit = _MUL_MEMO.get(key)
    if hit is not None:
        return hit
    aL, aR = _max_left(a), _min_right(a)
    bL, bR = _max_left(b), _min_right(b)

    def combine(p: SignSeq, q: SignSeq) -> SignSeq:
        return add(add(mul(p, b), mul(a, q)), neg(mul(p, q)))

    lows = []
    highs = []
    if aL is not None and bL is not None:
        lows.append(combine(aL, bL))
    if aR is not None and bR is not None:
        lows.append(combine(aR, bR))
    if aL is not None and bR is not None:
        highs.append(combine(aL, bR))
    if aR is not None and bL is not None:
        highs.append(combine(aR, bL))
    out = simplest_between(lows, highs)
    _MUL_MEMO[key] = out
    return out


def is_dyadic(q: Fraction) -> bool:
    return q.denominator & (q.denominator - 1) == 0


def to_dyadic(a: SignSeq) -> Fraction:
    """Value of a finite sign sequence as an exact dyadic rational."""
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    v = Fraction(0)
    for s in a:
        if s > 0:
            lo = v
        else:
            hi = v
        if hi is None:
            v = lo + 1
        elif lo is None:
            v = hi - 1
        else:
            v = (lo + hi) / 2
    return v


def from_dyadic(d: Fraction) -> SignSeq:
    """Sign sequence of a dyadic rational; inverse of to_dyadic."""
    d = Fraction(d)
    if not is_dyadic(d):
        raise ValueError(f"{d} is not a dyadic rational")
    out: list[int] = []
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    v = Fraction(0)
    while v != d:
        if d > v:
            out.append(1)
            lo = v
        else:
            out.append(-1)
            hi = v
        if hi is None:
            v = lo + 1
        elif lo is None:
            v = hi - 1
        else:
            v = (lo + hi) / 2
    return tuple(out)
