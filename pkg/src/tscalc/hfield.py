"""Randomized verification harness for the ordered-differential-field axioms.

Generates seeded random exact series and checks, case by case:

  (i)   f > 1 with positive sign implies derive(f) has positive sign;
  (ii)  f < 1 implies derive(f) < 1 (small derivation);
  (iii) f <= g iff derive(f) <= derive(g), for nonzero f, g not ~ 1;
  (iv)  the bounded part splits as constant + infinitesimal exactly when
        the series is bounded.

Failures are reported (with fully serialized operands), never thrown, so the
harness is usable as a CI gate: the report serializes to JSON and the module
runner exits 0 only when no case failed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Optional

from .calculus import derive
from .errors import NotBoundedError
from .series import (
    DEFAULT_BUDGET,
    ONE_MONOMIAL,
    ZERO,
    Transmonomial,
    Transseries,
    cmp_monomial,
    compare_dominance,
    inverse,
    series,
    sign,
)


def iota(f: Transseries, budget: int = DEFAULT_BUDGET) -> Transseries:
    """Multiplicative quasi-inverse: 1/f for nonzero f, 0 for f = 0."""
    if f.is_zero:
        return ZERO
    return inverse(f, budget)


def valuation_decompose(f: Transseries) -> tuple[Fraction, Transseries]:
    """Split a bounded series as constant plus infinitesimal."""
    const = Fraction(0)
    small = []
    for t in f.terms:
        c = cmp_monomial(t.monomial, ONE_MONOMIAL)
        if c > 0:
            raise NotBoundedError("series has an unbounded leading part")
        if c == 0:
            const = t.coeff
        else:
            small.append(t)
    if f.tail_bound is not None and cmp_monomial(f.tail_bound, ONE_MONOMIAL) >= 0:
        raise NotBoundedError("constant term hidden by the truncation bound")
    return const, Transseries(tuple(small), f.tail_bound)


@dataclass(frozen=True)
class GenConfig:
    """Bounds for the seeded random-series generator."""

    seed: int = 0
    max_terms: int = 4
    max_height: int = 1
    max_log_depth: int = 2
    exponent_bound: int = 3
    coeff_bound: int = 9

    def __post_init__(self) -> None:
        for name in ("max_terms", "max_height", "max_log_depth", "exponent_bound", "coeff_bound"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


def _random_fraction(rng: Random, bound: int, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-bound, bound), rng.choice((1, 1, 2)))
        if q or not nonzero:
            return q


def _random_log_monomial(rng: Random, cfg: GenConfig, force_large: bool = False) -> Transmonomial:
    depth = rng.randint(1, cfg.max_log_depth + 1)
    exps = [_random_fraction(rng, cfg.exponent_bound) for _ in range(depth)]
    if force_large:
        for i, e in enumerate(exps):
            if e:
                exps[i] = abs(e)
                break
        else:
            exps[0] = Fraction(1)
    return Transmonomial(tuple(exps))


def _random_large_series(rng: Random, cfg: GenConfig) -> Transseries:
    k = rng.randint(1, max(1, cfg.max_terms - 1))
    pairs = []
    for _ in range(k):
        m = _random_log_monomial(rng, cfg, force_large=True)
        pairs.append((_random_fraction(rng, cfg.coeff_bound, nonzero=True), m))
    out = series(pairs)
    if not out.terms:
        return series([(1, Transmonomial((Fraction(1),)))])
    return out


def random_monomial(rng: Random, cfg: GenConfig, height: Optional[int] = None) -> Transmonomial:
    if height is None:
        height = cfg.max_height
    base = _random_log_monomial(rng, cfg)
    if height >= 1 and rng.random() < 0.3:
        return Transmonomial(base.logexp, _random_large_series(rng, cfg))
    return base


def random_series(rng: Random, cfg: GenConfig) -> Transseries:
    """Random exact series (possibly zero) within the configured bounds."""
    k = rng.randint(0, cfg.max_terms)
    pairs = [
        (_random_fraction(rng, cfg.coeff_bound, nonzero=True), random_monomial(rng, cfg))
        for _ in range(k)
    ]
    return series(pairs)


@dataclass
class CheckReport:
    """Tally of axiom checks; failures carry full operand serializations."""

    cases_run: int = 0
    checked: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def _bump(self, axiom: str) -> None:
        self.checked[axiom] = self.checked.get(axiom, 0) + 1

    def _fail(self, axiom: str, case: int, operands: dict) -> None:
        from .serialize import series_to_obj

        self.failures.append(
            {
                "axiom": axiom,
                "case": case,
                "operands": {k: series_to_obj(v) for k, v in operands.items()},
            }
        )

    def to_obj(self) -> dict:
        return {
            "cases_run": self.cases_run,
            "checked": dict(self.checked),
            "failures": list(self.failures),
            "ok": self.ok,
        }

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_obj(), indent=indent)


def check_axioms(
    config: GenConfig,
    n_cases: int,
    derive_fn: Callable[[Transseries], Transseries] = derive,
) -> CheckReport:
    """Run the four axiom families over seeded random exact series.

    derive_fn is injectable so a deliberately corrupted rule can demonstrate
    harness sensitivity.
    """
    report = CheckReport()
    for case in range(n_cases):
        rng = Random(f"{config.seed}:{case}")
        f = random_series(rng, config)
        g = random_series(rng, config)
        report.cases_run += 1

        if not f.is_zero:
            lead = f.terms[0].monomial
            rel_one = cmp_monomial(lead, ONE_MONOMIAL)
            df = derive_fn(f)
            if rel_one > 0 and sign(f) == 1:
                report._bump("positive-derivative")
                if sign(df) != 1:
                    report._fail("positive-derivative", case, {"f": f, "derive(f)": df})
            if rel_one < 0:
                report._bump("small-derivation")
                if not (df.is_zero or cmp_monomial(df.terms[0].monomial, ONE_MONOMIAL) < 0):
                    report._fail("small-derivation", case, {"f": f, "derive(f)": df})

        if (
            not f.is_zero
            and not g.is_zero
            and cmp_monomial(f.terms[0].monomial, ONE_MONOMIAL) != 0
            and cmp_monomial(g.terms[0].monomial, ONE_MONOMIAL) != 0
        ):
            report._bump("dominance-derivative")
            df, dg = derive_fn(f), derive_fn(g)
            before = compare_dominance(f, g)
            if df.is_zero or dg.is_zero:
                report._fail("dominance-derivative", case, {"f": f, "g": g})
            elif compare_dominance(df, dg) != before:
                report._fail(
                    "dominance-derivative",
                    case,
                    {"f": f, "g": g, "derive(f)": df, "derive(g)": dg},
                )

        report._bump("valuation-split")
        bounded = f.is_zero or cmp_monomial(f.terms[0].monomial, ONE_MONOMIAL) <= 0
        try:
            const, small = valuation_decompose(f)
            split_ok = bounded and (
                small.is_zero or cmp_monomial(small.terms[0].monomial, ONE_MONOMIAL) < 0
            )
        except NotBoundedError:
            split_ok = not bounded
        if not split_ok:
            report._fail("valuation-split", case, {"f": f})
    return report


def lambda_omega_identity(n: int) -> bool:
    """Bit-exact check of -2*lambda_n' - lambda_n^2 = omega_n."""
    from .explog import lambda_series, omega_series
    from .series import mul, scale, sub

    lam = lambda_series(n)
    lhs = sub(scale(derive(lam), -2), mul(lam, lam))
    return lhs == omega_series(n)


def main(argv: Optional[list[str]] = None) -> int:
    import argparse

    ap = argparse.ArgumentParser(
        prog="python -m tscalc.hfield",
        description="Run the axiom harness and print a JSON report; exits 0 iff no failures.",
    )
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=1000)
    ap.add_argument("--indent", type=int, default=None)
    args = ap.parse_args(argv)
    report = check_axioms(GenConfig(seed=args.seed), args.cases)
    print(report.to_json(indent=args.indent))
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
