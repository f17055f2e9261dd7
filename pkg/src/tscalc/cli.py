"""Batch and interactive command-line front end.

    tscalc [--budget N] [--eval EXPR]... [--script FILE] [--json]

With --eval or --script, inputs run in order and the process exits 0 on
success, 1 if any input was rejected, 2 on an internal error.  Without them,
an interactive session reads commands from stdin.  --json switches series
output to the JSON wire format.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .repl import ReplState, repl_step


def _run_lines(state: ReplState, lines) -> ReplState:
    for line in lines:
        state, out = repl_step(state, line)
        if out:
            print(out)
        if state.done:
            break
    return state


def _interactive(state: ReplState) -> ReplState:
    prompt = "ts> " if sys.stdin.isatty() else ""
    while not state.done:
        try:
            line = input(prompt)
        except EOFError:
            break
        except KeyboardInterrupt:
            print()
            break
        state, out = repl_step(state, line)
        if out:
            print(out)
    return state


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="tscalc", description="exact transseries calculator")
    ap.add_argument("--budget", type=int, default=8, metavar="N",
                    help="expansion budget for inexact operations (default 8)")
    ap.add_argument("--eval", action="append", default=[], metavar="EXPR",
                    help="evaluate an expression or command (repeatable)")
    ap.add_argument("--script", metavar="FILE", help="run commands from a file")
    ap.add_argument("--json", action="store_true", help="emit series results as JSON")
    args = ap.parse_args(argv)
    if args.budget < 1:
        ap.error("--budget must be >= 1")
    state = ReplState(budget=args.budget, json_mode=args.json)
    try:
        batch = bool(args.eval or args.script)
        if args.eval:
            state = _run_lines(state, args.eval)
        if args.script:
            with open(args.script, "r", encoding="utf-8") as fh:
                state = _run_lines(state, fh.read().splitlines())
        if not batch:
            state = _interactive(state)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - internal failure guard
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2
    return 1 if state.errors else 0


if __name__ == "__main__":
    raise SystemExit(main())
