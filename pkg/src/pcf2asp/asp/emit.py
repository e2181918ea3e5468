"""Deterministic ASP-Core-2 text emission."""

from __future__ import annotations

from .terms import (
    ArithTerm,
    AspProgram,
    AspRule,
    Atom,
    ChoiceHead,
    Comparison,
    ConstTerm,
    NegAtom,
    NumberTerm,
    RangeCondition,
    TupleTerm,
    VariableTerm,
)


def emit_term(t) -> str:
    if isinstance(t, NumberTerm):
        return str(t.n)
    if isinstance(t, VariableTerm):
        return t.name
    if isinstance(t, ConstTerm):
        if not t.args:
            return t.name
        return f"{t.name}({','.join(emit_term(a) for a in t.args)})"
    if isinstance(t, TupleTerm):
        if len(t.items) == 1:
            (item,) = t.items
            # (n) and (X+1) read back as plain terms, so mark those 1-tuples
            if isinstance(item, (NumberTerm, ArithTerm)):
                return f"({emit_term(item)},)"
        return f"({','.join(emit_term(i) for i in t.items)})"
    if isinstance(t, ArithTerm):
        right = emit_term(t.right)
        if isinstance(t.right, ArithTerm) or (isinstance(t.right, NumberTerm) and t.right.n < 0):
            right = f"({right})"
        return f"{emit_term(t.left)}{t.op}{right}"
    raise TypeError(f"not an ASP term: {t!r}")


def _emit_atom(predicate: str, args) -> str:
    if not args:
        return predicate
    return f"{predicate}({','.join(emit_term(a) for a in args)})"


def emit_literal(lit) -> str:
    if isinstance(lit, Atom):
        return _emit_atom(lit.predicate, lit.args)
    if isinstance(lit, NegAtom):
        return "not " + _emit_atom(lit.predicate, lit.args)
    if isinstance(lit, Comparison):
        return f"{emit_term(lit.left)}{lit.op}{emit_term(lit.right)}"
    if isinstance(lit, RangeCondition):
        return f"{emit_term(lit.term)}={emit_term(lit.lower)}..{emit_term(lit.upper)}"
    raise TypeError(f"not an ASP literal: {lit!r}")


def emit_choice(head: ChoiceHead) -> str:
    upper = "" if head.upper is None else str(head.upper)
    template = emit_literal(head.template)
    if head.condition:
        cond = ",".join(emit_literal(c) for c in head.condition)
        return f"{head.lower} {{{template} : {cond}}} {upper}".rstrip()
    return f"{head.lower}{{{template}}}{upper}"


def emit_rule(rule: AspRule) -> str:
    if rule.head is None:
        head = ""
    elif isinstance(rule.head, ChoiceHead):
        head = emit_choice(rule.head)
    else:
        head = emit_literal(rule.head)
    if not rule.body:
        return f"{head}."
    return f"{head}:-{','.join(emit_literal(b) for b in rule.body)}."


def emit(program: AspProgram) -> str:
    """One rule per line, in program order; empty program gives ``""``."""
    return "".join(emit_rule(r) + "\n" for r in program)
