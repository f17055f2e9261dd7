"""Line-oriented REPL over the engine.

Commands:

    <expr>                 evaluate a series expression
    :cmp A B               asymptotic comparison, prints <<, ~~ or >>
    :derive E  :exp E  :log E   shorthands for the unary operations
    :lambda N  :omega N    cut-sequence stages
    :newton P LEVELS       stabilization probe on a Y-polynomial literal
    :surreal OP ARGS       add/mul/neg/cmp/todyadic/fromdyadic on +- strings
    :budget N              set the expansion budget (default 8)
    :load PATH             run a command script
    :save PATH             save the last series result as JSON
    :help  :quit

User errors print a diagnostic; the loop never aborts on them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from . import serialize, surreal
from .diffpoly import newton_poly, shape_check
from .errors import EvalError, ParseError, TransseriesError
from .evaluate import evaluate, evaluate_series
from .parser import contains_y, parse, parse_prefix
from .printer import format_dominance, format_series
from .series import Transseries, compare_dominance


@dataclass(frozen=True)
class ReplState:
    budget: int = 8
    json_mode: bool = False
    last: Optional[Transseries] = None
    errors: int = 0
    done: bool = False


def _render(state: ReplState, f: Transseries) -> str:
    if state.json_mode:
        return serialize.dumps(f)
    return format_series(f)


def _two_expressions(text: str):
    first, offset = parse_prefix(text)
    second = parse(text[offset:])
    return first, second


def _surreal_operand(token: str) -> surreal.SignSeq:
    return surreal.signs(token)


def _cmd_surreal(state: ReplState, rest: str) -> str:
    parts = rest.split()
    if not parts:
        raise EvalError("usage: :surreal OP ARGS")
    op, args = parts[0], parts[1:]
    if op in ("add", "mul", "cmp"):
        if len(args) != 2:
            raise EvalError(f":surreal {op} takes two sign sequences")
        a, b = _surreal_operand(args[0]), _surreal_operand(args[1])
        if op == "add":
            return surreal.signs_text(surreal.add(a, b)) or "0"
        if op == "mul":
            return surreal.signs_text(surreal.mul(a, b)) or "0"
        return {1: ">", 0: "=", -1: "<"}[surreal.cmp_signs(a, b)]
    if op == "neg":
        if len(args) != 1:
            raise EvalError(":surreal neg takes one sign sequence")
        return surreal.signs_text(surreal.neg(_surreal_operand(args[0]))) or "0"
    if op == "todyadic":
        if len(args) != 1:
            raise EvalError(":surreal todyadic takes one sign sequence")
        return str(surreal.to_dyadic(_surreal_operand(args[0])))
    if op == "fromdyadic":
        if len(args) != 1:
            raise EvalError(":surreal fromdyadic takes one rational k/2^m")
        return surreal.signs_text(surreal.from_dyadic(Fraction(args[0]))) or "0"
    raise EvalError(f"unknown surreal op {op!r} (add/mul/neg/cmp/todyadic/fromdyadic)")


def _cmd_newton(state: ReplState, rest: str) -> str:
    expr, offset = parse_prefix(rest)
    levels = int(rest[offset:].strip() or "0")
    poly = evaluate(expr, state.budget)
    if isinstance(poly, Transseries):
        raise EvalError(":newton needs a Y-polynomial literal")
    result = newton_poly(poly, levels)
    if not result.stabilized:
        return f"no stabilization within {levels} levels; last dominant part: {result.poly}"
    verdict = shape_check(result.poly)
    notes = []
    if verdict.separable_power is not None:
        notes.append(f"A(Y)*(Y')^{verdict.separable_power}")
    if verdict.quasilinear:
        notes.append("quasilinear")
    if not notes:
        notes.append("no separable shape")
    return f"stabilized at level {result.level}: {result.poly}  [{', '.join(notes)}]"


def repl_step(state: ReplState, line: str) -> tuple[ReplState, str]:
    """Process one input line; returns the new state and the printable output."""
    text = line.strip()
    if not text or text.startswith("#"):
        return state, ""
    try:
        if not text.startswith(":"):
            value = evaluate(parse(text), state.budget)
            if isinstance(value, Transseries):
                return replace(state, last=value), _render(state, value)
            return state, str(value)
        cmd, _, rest = text[1:].partition(" ")
        rest = rest.strip()
        if cmd in ("quit", "q", "exit"):
            return replace(state, done=True), ""
        if cmd == "help":
            return state, __doc__.strip()
        if cmd == "budget":
            n = int(rest)
            if n < 1:
                raise EvalError("budget must be >= 1")
            return replace(state, budget=n), f"budget = {n}"
        if cmd == "cmp":
            a, b = _two_expressions(rest)
            rel = compare_dominance(
                evaluate_series(a, state.budget), evaluate_series(b, state.budget)
            )
            return state, format_dominance(rel)
        if cmd in ("derive", "exp", "log", "up", "down", "iota"):
            value = evaluate_series(parse(f"{cmd}({rest})"), state.budget)
            return replace(state, last=value), _render(state, value)
        if cmd in ("lambda", "omega"):
            value = evaluate_series(parse(f"{cmd}({rest})"), state.budget)
            return replace(state, last=value), _render(state, value)
        if cmd == "newton":
            return state, _cmd_newton(state, rest)
        if cmd == "surreal":
            return state, _cmd_surreal(state, rest)
        if cmd == "load":
            with open(rest, "r", encoding="utf-8") as fh:
                lines = fh.read().splitlines()
            outputs = []
            for entry in lines:
                state, out = repl_step(state, entry)
                if out:
                    outputs.append(out)
                if state.done:
                    break
            return state, "\n".join(outputs)
        if cmd == "save":
            if state.last is None:
                raise EvalError("nothing to save yet")
            with open(rest, "w", encoding="utf-8") as fh:
                fh.write(serialize.dumps(state.last) + "\n")
            return state, f"saved {rest}"
        raise EvalError(f"unknown command :{cmd} (try :help)")
    except ParseError as exc:
        return replace(state, errors=state.errors + 1), f"error: {exc}"
    except (TransseriesError, ZeroDivisionError, ValueError, OSError) as exc:
        return replace(state, errors=state.errors + 1), f"error: {exc}"
