"""ASP intermediate representation, emission, parsing and safety checks."""

from .emit import emit, emit_literal, emit_rule, emit_term
from .parser import parse_atom, parse_program, parse_rule, parse_term
from .safety import SafetyReport, check_program_safety, check_safety
from .terms import (
    ArithTerm,
    AspLiteral,
    AspProgram,
    AspRule,
    AspTerm,
    Atom,
    ChoiceHead,
    Comparison,
    ConstTerm,
    NegAtom,
    NumberTerm,
    RangeCondition,
    TupleTerm,
    VariableTerm,
    atom,
    const,
    is_ground,
    num,
    tup,
    var,
)

__all__ = [
    "ArithTerm",
    "AspLiteral",
    "AspProgram",
    "AspRule",
    "AspTerm",
    "Atom",
    "ChoiceHead",
    "Comparison",
    "ConstTerm",
    "NegAtom",
    "NumberTerm",
    "RangeCondition",
    "SafetyReport",
    "TupleTerm",
    "VariableTerm",
    "atom",
    "check_program_safety",
    "check_safety",
    "const",
    "emit",
    "emit_literal",
    "emit_rule",
    "emit_term",
    "is_ground",
    "num",
    "parse_atom",
    "parse_program",
    "parse_rule",
    "parse_term",
    "tup",
    "var",
]
