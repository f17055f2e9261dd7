"""Exception types shared across the engine.

Division by an exactly-zero series raises the builtin ZeroDivisionError.
"""


class TransseriesError(Exception):
    """Base class for engine errors caused by the operands, not by bugs."""


class BothZeroError(TransseriesError):
    """Three-way dominance comparison of two zero series."""


class IndeterminateSignError(TransseriesError):
    """A truncated series with no listed terms has no usable leading term."""


class IndeterminateDominanceError(TransseriesError):
    """A coefficient hidden below its truncation bound cannot be ranked."""


class NotPositiveError(TransseriesError):
    """log of a series that is not strictly positive."""


class NonRationalConstantError(TransseriesError):
    """exp/log would leave the rational constant field (e^c, log c with c != 1)."""


class NotBoundedError(TransseriesError):
    """Valuation-ring decomposition of a series with an infinite leading term."""


class NotSeparatedError(TransseriesError):
    """Surreal cut {L | R} where some member of L is >= some member of R."""


class ParseError(TransseriesError):
    """Rejected input text; carries the offset and the expected-token set."""

    def __init__(self, position: int, expected: tuple[str, ...], found: str = ""):
        self.position = position
        self.expected = tuple(expected)
        self.found = found
        what = " or ".join(expected) if expected else "valid input"
        tail = f", found {found!r}" if found else ""
        super().__init__(f"syntax error at offset {position}: expected {what}{tail}")


class EvalError(TransseriesError):
    """Structurally valid expression that the engine cannot evaluate."""
