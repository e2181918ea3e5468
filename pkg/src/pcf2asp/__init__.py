"""Transpile PCF expressions to answer set programs and check the result."""

from .errors import ParseError, PcfError, UnboundVariable
from .evaluator import (
    Closure,
    ClosureValue,
    Env,
    NatValue,
    StepBudget,
    evaluate,
    evaluate_expr,
)
from .grounder import AnswerSet, GroundBudget, extract_result, ground_positive
from .search import SearchProblem, VarDecl, solve_enumerative, transpile_with_choices
from .syntax import free_vars, parse_expr, pretty
from .transpiler import static_preamble, translate, translate_dynamic, translate_sub

__version__ = "0.1.0"

__all__ = [
    "AnswerSet",
    "Closure",
    "ClosureValue",
    "Env",
    "GroundBudget",
    "NatValue",
    "ParseError",
    "PcfError",
    "SearchProblem",
    "StepBudget",
    "UnboundVariable",
    "VarDecl",
    "evaluate",
    "evaluate_expr",
    "extract_result",
    "free_vars",
    "ground_positive",
    "parse_expr",
    "pretty",
    "solve_enumerative",
    "static_preamble",
    "translate",
    "translate_dynamic",
    "translate_sub",
    "transpile_with_choices",
]
