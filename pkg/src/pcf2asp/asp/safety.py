from __future__ import annotations

from dataclasses import dataclass

from .terms import ArithTerm, AspRule, Atom, ChoiceHead, RangeCondition, VariableTerm


@dataclass(frozen=True)
class SafetyReport:
    unsafe: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.unsafe

    def __bool__(self):
        return self.ok


def binding_variables(term) -> set[str]:
    """Variables a positive occurrence of ``term`` can bind (arithmetic excluded)."""
    if isinstance(term, ArithTerm):
        return set()
    if isinstance(term, VariableTerm):
        return {term.name}
    children = getattr(term, "args", None) or getattr(term, "items", ())
    out = set()
    for child in children:
        out |= binding_variables(child)
    return out


def _covered(literals, bound: set[str]) -> set[str]:
    bound = set(bound)
    for lit in literals:
        if isinstance(lit, Atom):
            for arg in lit.args:
                bound |= binding_variables(arg)
    # ranges bind their variable once the bounds are bound
    changed = True
    while changed:
        changed = False
        for lit in literals:
            if (
                isinstance(lit, RangeCondition)
                and isinstance(lit.term, VariableTerm)
                and lit.term.name not in bound
                and set(lit.lower.variables()) | set(lit.upper.variables()) <= bound
            ):
                bound.add(lit.term.name)
                changed = True
    return bound


def check_safety(rule: AspRule) -> SafetyReport:
    """Report the variables of ``rule`` that no positive body literal binds."""
    covered = _covered(rule.body, set())
    needed = set()
    for lit in rule.body:
        needed.update(lit.variables())
    head = rule.head
    if isinstance(head, ChoiceHead):
        local = _covered(head.condition, covered)
        unsafe = {v for v in head.variables() if v not in local}
    else:
        if head is not None:
            needed.update(head.variables())
        unsafe = set()
    unsafe |= needed - covered
    return SafetyReport(tuple(sorted(unsafe)))


def check_program_safety(program) -> dict[int, SafetyReport]:
    """Map rule index to report, for every unsafe rule of ``program``."""
    out = {}
    for i, rule in enumerate(program):
        report = check_safety(rule)
        if not report.ok:
            out[i] = report
    return out
