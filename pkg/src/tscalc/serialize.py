"""JSON round-trip for series.

Schema (stable field order):

    {"terms": [{"coeff": "p/q",
                "monomial": {"log": ["r0", ...], "exp": <series-or-null>}},
               ...],
     "tail": "exact" | {"below": <monomial>}}

Rationals serialize as reduced fraction strings ("3", "-5/2").
"""

from __future__ import annotations

import json
from fractions import Fraction

from .series import Transmonomial, Transseries, series


def mono_to_obj(m: Transmonomial) -> dict:
    return {
        "log": [str(r) for r in m.logexp],
        "exp": series_to_obj(m.exppart) if m.exppart is not None else None,
    }


def series_to_obj(f: Transseries) -> dict:
    return {
        "terms": [
            {"coeff": str(t.coeff), "monomial": mono_to_obj(t.monomial)} for t in f.terms
        ],
        "tail": "exact" if f.tail_bound is None else {"below": mono_to_obj(f.tail_bound)},
    }


def obj_to_mono(obj: dict) -> Transmonomial:
    if not isinstance(obj, dict):
        raise ValueError(f"monomial object expected, got {type(obj).__name__}")
    exp = obj.get("exp")
    return Transmonomial(
        tuple(Fraction(r) for r in obj.get("log", ())),
        obj_to_series(exp) if exp is not None else None,
    )


def obj_to_series(obj: dict) -> Transseries:
    if not isinstance(obj, dict):
        raise ValueError(f"series object expected, got {type(obj).__name__}")
    pairs = [
        (Fraction(entry["coeff"]), obj_to_mono(entry["monomial"]))
        for entry in obj.get("terms", ())
    ]
    tail = obj.get("tail", "exact")
    if tail == "exact":
        bound = None
    elif isinstance(tail, dict) and "below" in tail:
        bound = obj_to_mono(tail["below"])
    else:
        raise ValueError(f"bad tail marker: {tail!r}")
    # The factory re-sorts and re-filters, so foreign JSON is canonicalized.
    return series(pairs, bound)


def dumps(f: Transseries, indent: int | None = None) -> str:
    return json.dumps(series_to_obj(f), indent=indent)


def loads(text: str) -> Transseries:
    return obj_to_series(json.loads(text))
