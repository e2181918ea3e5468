"""Search problems: PCF expressions with free, choice-defined variables.

A declared identifier ``a`` ranging over ``lo..hi`` becomes the choice rule
``1 {a(X) : X=lo..hi} 1.``; inside the translation it stands for an ASP
variable guarded by ``a(A)``. Answer sets of the resulting program are found
by naive enumeration of choice selections over the positive core.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .asp.emit import emit
from .asp.terms import (
    AspProgram,
    AspRule,
    Atom,
    ChoiceHead,
    NegAtom,
    NumberTerm,
    RangeCondition,
    VariableTerm,
)
from .errors import PcfError
from .grounder import (
    AnswerSet,
    BudgetExceeded,
    CompiledRule,
    GroundBudget,
    _AtomPattern,
    _plan,
    _run,
    _Store,
    _Undefined,
    compile_rules,
    ground_native,
    term_key,
)
from .syntax import Expr, free_vars, parse_expr
from .transpiler import INTER, DOMAIN, RESULT, TransEnv, static_preamble, translate_dynamic

_DECL_RE = re.compile(r"\s*([a-z][A-Za-z0-9_]*)\s*=\s*([0-9]+)\s*\.\.\s*([0-9]+)\s*\Z")
_HEADER_RE = re.compile(r"^\s*#\s*var\s+(.*)$", re.MULTILINE)
_RESERVED = frozenset({INTER, DOMAIN, RESULT})


class SearchError(PcfError):
    pass


class UndeclaredFreeVariable(SearchError):
    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__(f"free variables without a declaration: {', '.join(self.names)}")


class UnsupportedRuleForm(SearchError):
    pass


@dataclass(frozen=True)
class VarDecl:
    name: str
    lower: int
    upper: int

    def __post_init__(self):
        if not re.fullmatch(r"[a-z][A-Za-z0-9_]*", self.name):
            raise ValueError(f"declared name {self.name!r} must start with a lowercase letter")
        if self.name in _RESERVED:
            raise ValueError(f"{self.name!r} is a reserved predicate name")
        if not 0 <= self.lower <= self.upper:
            raise ValueError(f"empty or negative range {self.lower}..{self.upper}")

    @classmethod
    def parse(cls, text: str) -> "VarDecl":
        """Parse ``name=lo..hi``."""
        m = _DECL_RE.match(text)
        if m is None:
            raise ValueError(f"bad variable declaration {text!r}, expected name=lo..hi")
        return cls(m.group(1), int(m.group(2)), int(m.group(3)))

    @property
    def values(self) -> range:
        return range(self.lower, self.upper + 1)


@dataclass(frozen=True)
class SearchProblem:
    expr: Expr
    decls: tuple = ()
    require_zero: bool = False

    def __post_init__(self):
        if not isinstance(self.decls, tuple):
            object.__setattr__(self, "decls", tuple(self.decls))
        names = [d.name for d in self.decls]
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable declaration")

    def undeclared(self) -> set[str]:
        return set(free_vars(self.expr)) - {d.name for d in self.decls}


def read_header_decls(text: str) -> list[VarDecl]:
    """Collect ``#var name = lo..hi`` declarations from PCF source comments."""
    return [VarDecl.parse(m.group(1)) for m in _HEADER_RE.finditer(text)]


def load_problem(text: str, decls: Sequence[VarDecl] = (), require_zero: bool = False) -> SearchProblem:
    """Build a problem from source, merging header declarations with ``decls``."""
    merged = {d.name: d for d in read_header_decls(text)}
    merged.update({d.name: d for d in decls})
    return SearchProblem(parse_expr(text), tuple(merged.values()), require_zero)


def _choice_variable(name: str) -> VariableTerm:
    upper = name[0].upper() + name[1:]
    # keep clear of the translator's X0, X1, ...
    if re.fullmatch(r"X[0-9]+", upper):
        upper = "V" + upper
    return VariableTerm(upper)


def choice_rule(decl: VarDecl) -> AspRule:
    """``1 {a(X) : X=lo..hi} 1.`` -- exactly one value for the declared name.

    The range sits in the choice condition; as a body literal it would make
    ``X`` global and force every value at once.
    """
    x = VariableTerm("X")
    cond = RangeCondition(x, NumberTerm(decl.lower), NumberTerm(decl.upper))
    return AspRule(ChoiceHead(1, 1, Atom(decl.name, (x,)), (cond,)))


REQUIRE_ZERO = AspRule(None, (NegAtom(RESULT, (NumberTerm(0),)),))


def transpile_with_choices(problem: SearchProblem, prune: bool = False) -> AspProgram:
    undeclared = problem.undeclared()
    if undeclared:
        raise UndeclaredFreeVariable(undeclared)
    used = free_vars(problem.expr)
    choices = {}
    for d in problem.decls:
        if d.name in used:
            v = _choice_variable(d.name)
            choices[d.name] = (v, Atom(d.name, (v,)))
    head = [choice_rule(d) for d in problem.decls]
    if problem.require_zero:
        head.append(REQUIRE_ZERO)
    dynamic = translate_dynamic(problem.expr, prune=prune, env=TransEnv(choices=choices))
    return AspProgram(tuple(head)) + static_preamble() + dynamic


# ---------------------------------------------------------------- solving

class _Group:
    """One ground choice: between lower and upper of ``options`` must hold."""

    __slots__ = ("lower", "upper", "options")

    def __init__(self, lower, upper, options):
        self.lower = lower
        self.upper = upper
        self.options = options


class _Choice:
    def __init__(self, rule: AspRule):
        head: ChoiceHead = rule.head
        for lit in rule.body + head.condition:
            if isinstance(lit, NegAtom):
                raise UnsupportedRuleForm(f"negation inside choice rule {rule}")
        self.rule = rule
        self.head = head
        self.body = CompiledRule(AspRule(None, rule.body)) if rule.body else None
        self.template = _AtomPattern(head.template)
        cond_atoms = [_AtomPattern(a) for a in head.condition if isinstance(a, Atom)]
        cond_other = [c for c in head.condition if not isinstance(c, Atom)]
        bound = set()
        for lit in rule.body:
            bound.update(lit.variables())
        self.cond_plan = _plan(cond_atoms, cond_other, [], bound_init=bound)

    def groups(self, store: _Store) -> list[_Group]:
        bindings = self.body.instances(store) if self.body else [{}]
        out = []
        for b in bindings:
            options = []
            _run(self.cond_plan, store, {}, b, lambda nb: options.append(self._instance(nb)))
            options = sorted({o for o in options if o is not None}, key=_fact_key)
            out.append(_Group(self.head.lower, self.head.upper, options))
        return out

    def _instance(self, b):
        try:
            return (self.template.key, self.template.build(b))
        except _Undefined:
            return None


def _fact_key(fact):
    (pred, arity), row = fact
    return (pred, arity, tuple(term_key(v) for v in row))


def _subsets(options, lower, upper):
    top = len(options) if upper is None else min(upper, len(options))
    for k in range(lower, top + 1):
        yield from itertools.combinations(options, k)


def _split(program: AspProgram):
    positive, choices, constraints = [], [], []
    for rule in program:
        if rule.head is None:
            constraints.append(rule)
        elif isinstance(rule.head, ChoiceHead):
            choices.append(rule)
        else:
            if any(isinstance(lit, NegAtom) for lit in rule.body):
                raise UnsupportedRuleForm(f"negation is only supported in constraints: {rule}")
            positive.append(rule)
    return positive, choices, constraints


def solve_enumerative(program: AspProgram, budget: Optional[GroundBudget] = None,
                      max_models: Optional[int] = None) -> list[AnswerSet]:
    """All answer sets of a positive program extended with choices and constraints.

    Candidate choice atoms come from the least model of the positive rules
    plus every candidate (iterated to a fixpoint); each selection within the
    cardinality bounds is then grounded and checked against the choice bounds
    and the constraints. Selections are ordered by their chosen atoms.
    """
    budget = budget or GroundBudget()
    positive, choice_rules, constraint_rules = _split(program)
    rules = compile_rules(positive)
    compile_rules(constraint_rules)
    compile_rules(choice_rules)
    choices = [_Choice(r) for r in choice_rules]
    constraints = [CompiledRule(r) for r in constraint_rules]

    base = ground_native(rules, budget)

    # over-approximate the candidate atoms
    candidates: set = set()
    over = base
    while True:
        found = {o for c in choices for g in c.groups(over) for o in g.options}
        if found <= candidates:
            break
        candidates |= found
        over = ground_native(rules, budget, base=base, facts=sorted(candidates, key=_fact_key))

    group_lists = [g for c in choices for g in c.groups(over)]
    per_group = [list(_subsets(g.options, g.lower, g.upper)) for g in group_lists]

    # Walk the selection tree depth-first, closing the model after every
    # group; the least model is monotone, so each prefix is grounded once.
    seen_selections = set()
    models = {}

    def walk(depth, store, chosen):
        if max_models is not None and len(models) >= max_models:
            return
        if depth == len(per_group):
            selection = frozenset(chosen)
            if selection in seen_selections:
                return
            seen_selections.add(selection)
            if not _stable_choices(choices, store, selection):
                return
            if any(c.instances(store) for c in constraints):
                return
            key = frozenset(store.facts)
            if key not in models:
                models[key] = (tuple(sorted(selection, key=_fact_key)), AnswerSet._from_native(store.facts))
            return
        for subset in per_group[depth]:
            fresh = [f for f in subset if f not in chosen]
            if fresh:
                nxt = ground_native(rules, budget, base=store, facts=sorted(fresh, key=_fact_key))
            else:
                nxt = store
            walk(depth + 1, nxt, chosen | set(subset))

    walk(0, base, frozenset())
    ordered = sorted(models.values(), key=lambda item: [_fact_key(f) for f in item[0]])
    return [answer for _, answer in ordered]


def _stable_choices(choices, store, selection) -> bool:
    """Check cardinality bounds in the final model and that each chosen atom is supported."""
    supported = set()
    for choice in choices:
        for group in choice.groups(store):
            count = sum(1 for o in group.options if (o[0][0], o[1]) in store)
            if count < group.lower or (group.upper is not None and count > group.upper):
                return False
            supported.update(group.options)
    return selection <= supported


def export_for_external_solver(program: AspProgram, path) -> Path:
    """Write the program as ASP-Core-2 text for an external solver."""
    path = Path(path)
    path.write_text(emit(program), encoding="utf-8")
    return path


def assignment_of(answer: AnswerSet, decls: Sequence[VarDecl]) -> dict[str, int]:
    """Read the chosen value of every declared variable from an answer set."""
    out = {}
    for d in decls:
        atoms = answer.with_predicate(d.name)
        if len(atoms) == 1 and isinstance(atoms[0].args[0], NumberTerm):
            out[d.name] = atoms[0].args[0].n
    return out


__all__ = [
    "BudgetExceeded",
    "SearchProblem",
    "UndeclaredFreeVariable",
    "UnsupportedRuleForm",
    "VarDecl",
    "assignment_of",
    "choice_rule",
    "export_for_external_solver",
    "load_problem",
    "read_header_decls",
    "solve_enumerative",
    "transpile_with_choices",
]
