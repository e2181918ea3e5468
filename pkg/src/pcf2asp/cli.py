"""Command-line front end: ``pcf2asp eval|transpile|run|ground|solve``.

Results go to stdout, diagnostics to stderr. Exit codes:

    0  success
    2  usage error
    3  parse error (PCF or ASP source)
    4  evaluation got stuck (pred of zero, unbound variable, type mismatch)
    5  step or grounding budget exhausted
    6  ``run --check`` found a mismatch between interpreter and grounder
    7  grounding or solving error (unsafe rule, unsupported form, ambiguity)
    8  file system error
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .asp.emit import emit
from .asp.parser import parse_program
from .errors import ParseError, PcfError, UnboundVariable
from .evaluator import BudgetExhausted, EvalError, NatValue, StepBudget, evaluate_expr, DEFAULT_STEPS
from .grounder import (
    BudgetExceeded,
    GroundBudget,
    GroundError,
    NonNumericResult,
    NonPositiveProgram,
    extract_result,
    ground_positive,
    DEFAULT_MAX_ATOMS,
    DEFAULT_MAX_ITERATIONS,
)
from .search import (
    SearchError,
    VarDecl,
    export_for_external_solver,
    load_problem,
    solve_enumerative,
    transpile_with_choices,
)
from .syntax import parse_expr
from .transpiler import translate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_STUCK = 4
EXIT_BUDGET = 5
EXIT_MISMATCH = 6
EXIT_GROUND = 7
EXIT_IO = 8

BUDGET_ENV = "PCF2ASP_BUDGET"


class _Usage(Exception):
    pass


def budget_defaults(environ=None) -> dict:
    """Read ``PCF2ASP_BUDGET``: a bare integer or ``steps=..,atoms=..,iterations=..``."""
    environ = os.environ if environ is None else environ
    out = {"steps": DEFAULT_STEPS, "atoms": DEFAULT_MAX_ATOMS, "iterations": DEFAULT_MAX_ITERATIONS}
    raw = environ.get(BUDGET_ENV, "").strip()
    if not raw:
        return out
    try:
        if "=" not in raw:
            n = int(raw)
            return {key: n for key in out}
        for part in raw.split(","):
            key, _, value = part.partition("=")
            key = key.strip()
            if key not in out:
                raise _Usage(f"{BUDGET_ENV}: unknown key {key!r}")
            out[key] = int(value)
    except ValueError:
        raise _Usage(f"{BUDGET_ENV}: expected an integer or key=value list, got {raw!r}") from None
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pcf2asp", description="PCF to ASP transpiler and checker")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, stage_budgets):
        p.add_argument("input", help="input file, or - for stdin")
        if "steps" in stage_budgets:
            p.add_argument("--max-steps", type=int, help="interpreter step budget")
        if "ground" in stage_budgets:
            p.add_argument("--max-atoms", type=int, help="grounding atom budget")
            p.add_argument("--max-iterations", type=int, help="grounding iteration budget")

    p = sub.add_parser("eval", help="evaluate a PCF program with the interpreter")
    common(p, {"steps"})

    p = sub.add_parser("transpile", help="translate a PCF program to ASP")
    common(p, set())
    p.add_argument("-o", "--output", help="write the program here instead of stdout")
    p.add_argument("--prune-scope", action="store_true", help="keep only used variables in scope tuples")

    p = sub.add_parser("run", help="translate, ground and print the result")
    common(p, {"steps", "ground"})
    p.add_argument("--prune-scope", action="store_true")
    p.add_argument("--check", action="store_true", help="compare against the interpreter")

    p = sub.add_parser("ground", help="ground a positive ASP program")
    common(p, {"ground"})

    p = sub.add_parser("solve", help="enumerate answer sets of a .lp program or a .pcf search problem")
    common(p, {"ground"})
    p.add_argument("--var", action="append", default=[], metavar="NAME=LO..HI",
                   help="declare a free variable (repeatable)")
    p.add_argument("--require-zero", action="store_true", help="keep only models with result(0)")
    p.add_argument("--prune-scope", action="store_true")
    p.add_argument("--export", metavar="PATH", help="write the program for an external solver and stop")
    p.add_argument("--all-atoms", action="store_true", help="print every atom of each model")
    p.add_argument("--max-models", type=int)
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _steps(args, defaults) -> StepBudget:
    n = args.max_steps if args.max_steps is not None else defaults["steps"]
    return StepBudget(n)


def _ground_budget(args, defaults) -> GroundBudget:
    atoms = args.max_atoms if args.max_atoms is not None else defaults["atoms"]
    iterations = args.max_iterations if args.max_iterations is not None else defaults["iterations"]
    return GroundBudget(atoms, iterations)


def _format_value(value) -> str:
    return str(value.n) if isinstance(value, NatValue) else "<closure>"


def cmd_eval(args, defaults, out) -> int:
    e = parse_expr(_read(args.input))
    value = evaluate_expr(e, budget=_steps(args, defaults))
    print(_format_value(value), file=out)
    return EXIT_OK


def cmd_transpile(args, defaults, out) -> int:
    e = parse_expr(_read(args.input))
    text = emit(translate(e, prune=args.prune_scope))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def _grounded_value(e, prune, budget) -> str:
    answer = ground_positive(translate(e, prune=prune), budget)
    try:
        n = extract_result(answer)
    except NonNumericResult:
        return "<closure>"
    return "no result" if n is None else str(n)


def cmd_run(args, defaults, out) -> int:
    e = parse_expr(_read(args.input))
    got = _grounded_value(e, args.prune_scope, _ground_budget(args, defaults))
    print(got, file=out)
    if args.check:
        expected = _format_value(evaluate_expr(e, budget=_steps(args, defaults)))
        if expected != got:
            print(f"mismatch: interpreter gives {expected}, grounding gives {got}", file=sys.stderr)
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_ground(args, defaults, out) -> int:
    program = parse_program(_read(args.input))
    try:
        answer = ground_positive(program, _ground_budget(args, defaults))
    except NonPositiveProgram as exc:
        raise NonPositiveProgram(f"{exc}; use `pcf2asp solve` for choice rules and constraints") from None
    print(answer.format(), file=out)
    return EXIT_OK


def cmd_solve(args, defaults, out) -> int:
    try:
        decls = [VarDecl.parse(v) for v in args.var]
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    text = _read(args.input)
    shown = None
    if args.input.endswith(".lp"):
        if decls or args.require_zero:
            raise _Usage("--var and --require-zero only apply to PCF input")
        program = parse_program(text)
    else:
        problem = load_problem(text, decls, args.require_zero)
        program = transpile_with_choices(problem, prune=args.prune_scope)
        if not args.all_atoms:
            shown = [d.name for d in problem.decls] + ["result"]
    if args.export:
        export_for_external_solver(program, args.export)
        return EXIT_OK
    models = solve_enumerative(program, _ground_budget(args, defaults), max_models=args.max_models)
    for m in models:
        print((m.restrict(*shown) if shown else m).format(), file=out)
    print(f"models: {len(models)}", file=out)
    return EXIT_OK


_COMMANDS = {
    "eval": cmd_eval,
    "transpile": cmd_transpile,
    "run": cmd_run,
    "ground": cmd_ground,
    "solve": cmd_solve,
}


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, _Usage):
        return EXIT_USAGE
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, (BudgetExhausted, BudgetExceeded)):
        return EXIT_BUDGET
    if isinstance(exc, (EvalError, UnboundVariable)):
        return EXIT_STUCK
    if isinstance(exc, (GroundError, SearchError, PcfError)):
        return EXIT_GROUND
    if isinstance(exc, OSError):
        return EXIT_IO
    raise exc


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        defaults = budget_defaults()
        return _COMMANDS[args.command](args, defaults, out)
    except (PcfError, OSError, _Usage) as exc:
        code = exit_code_for(exc)
        print(f"pcf2asp: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
