"""Bottom-up grounding of positive ASP programs.

For a safe program without negation, choices or constraints the least model
is its unique answer set; :func:`ground_positive` computes it with
semi-naive evaluation. Internally ground terms are plain Python values
(``int`` for numbers, ``str`` for constants, ``tuple`` for tuples and
:class:`Fn` for function terms), which keeps matching and hashing cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .asp.emit import emit_term
from .asp.safety import binding_variables, check_safety
from .asp.terms import (
    ArithTerm,
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
)
from .errors import PcfError

DEFAULT_MAX_ATOMS = 1_000_000
DEFAULT_MAX_ITERATIONS = 100_000


class GroundError(PcfError):
    pass


class BudgetExceeded(GroundError):
    pass


class UnsafeRule(GroundError):
    def __init__(self, rule, unsafe):
        self.rule = rule
        self.unsafe = unsafe
        super().__init__(f"unsafe variables {', '.join(unsafe)} in rule {rule}")


class UnboundComparison(GroundError):
    pass


class NonPositiveProgram(GroundError):
    pass


class AmbiguousResult(GroundError):
    def __init__(self, values):
        self.values = values
        super().__init__(f"several result atoms: {', '.join(map(str, values))}")


class NonNumericResult(GroundError):
    def __init__(self, term):
        self.term = term
        super().__init__(f"result is not a number: {term}")


@dataclass(frozen=True)
class GroundBudget:
    max_atoms: int = DEFAULT_MAX_ATOMS
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if self.max_atoms <= 0 or self.max_iterations <= 0:
            raise ValueError("grounding budgets must be positive")


# ---------------------------------------------------------------- values

class Fn:
    """Ground function term ``name(args)``."""

    __slots__ = ("name", "args", "_hash")

    def __init__(self, name: str, args: tuple):
        self.name = name
        self.args = args
        self._hash = hash((Fn, name, args))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return type(other) is Fn and self._hash == other._hash and self.name == other.name and self.args == other.args

    def __repr__(self):
        return f"Fn({self.name!r}, {self.args!r})"


class _Undefined(Exception):
    """Arithmetic over non-integers; the instantiation is dropped."""


def to_native(term: AspTerm):
    if isinstance(term, NumberTerm):
        return term.n
    if isinstance(term, ConstTerm):
        if term.args:
            return Fn(term.name, tuple(to_native(a) for a in term.args))
        return term.name
    if isinstance(term, TupleTerm):
        return tuple(to_native(i) for i in term.items)
    if isinstance(term, ArithTerm):
        left, right = to_native(term.left), to_native(term.right)
        if type(left) is not int or type(right) is not int:
            raise _Undefined
        return left + right if term.op == "+" else left - right
    raise GroundError(f"term is not ground: {term}")


def from_native(value) -> AspTerm:
    if type(value) is int:
        return NumberTerm(value)
    if type(value) is str:
        return ConstTerm(value)
    if type(value) is tuple:
        return TupleTerm(tuple(from_native(v) for v in value))
    return ConstTerm(value.name, tuple(from_native(a) for a in value.args))


def term_key(value):
    """Total order on ground values: numbers < constants < compound terms."""
    if type(value) is int:
        return (0, value)
    if type(value) is str:
        return (1, value)
    if type(value) is tuple:
        return (2, len(value), "", tuple(term_key(v) for v in value))
    return (2, len(value.args), value.name, tuple(term_key(v) for v in value.args))


# ---------------------------------------------------------------- answer sets

@dataclass(frozen=True)
class GroundAtom:
    predicate: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(emit_term(a) for a in self.args)})"

    def sort_key(self):
        return (self.predicate, len(self.args), tuple(term_key(to_native(a)) for a in self.args))

    @classmethod
    def parse(cls, text: str) -> "GroundAtom":
        from .asp.parser import parse_atom

        a = parse_atom(text)
        return cls(a.predicate, tuple(from_native(to_native(t)) for t in a.args))


class AnswerSet:
    """An immutable set of ground atoms."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: Iterable[GroundAtom] = ()):
        self.atoms = frozenset(atoms)

    @classmethod
    def _from_native(cls, facts) -> "AnswerSet":
        return cls(GroundAtom(pred, tuple(from_native(v) for v in args)) for pred, args in facts)

    def _native(self):
        return {(a.predicate, tuple(to_native(t) for t in a.args)) for a in self.atoms}

    def __contains__(self, item):
        if isinstance(item, str):
            item = GroundAtom.parse(item)
        elif isinstance(item, Atom):
            item = GroundAtom(item.predicate, item.args)
        return item in self.atoms

    def __iter__(self) -> Iterator[GroundAtom]:
        return iter(self.sorted())

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        return isinstance(other, AnswerSet) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def sorted(self) -> list[GroundAtom]:
        return sorted(self.atoms, key=GroundAtom.sort_key)

    def restrict(self, *predicates: str) -> "AnswerSet":
        return AnswerSet(a for a in self.atoms if a.predicate in predicates)

    def with_predicate(self, predicate: str) -> list[GroundAtom]:
        return [a for a in self.sorted() if a.predicate == predicate]

    def format(self) -> str:
        return " ".join(str(a) for a in self.sorted())

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"AnswerSet({{{self.format()}}})"


def extract_result(answer_set: AnswerSet) -> Optional[int]:
    """The number ``n`` of the single ``result(n)`` atom, or None if there is none."""
    results = answer_set.with_predicate("result")
    if not results:
        return None
    if len(results) > 1:
        raise AmbiguousResult([a.args[0] if len(a.args) == 1 else a for a in results])
    (atom,) = results
    if len(atom.args) != 1 or not isinstance(atom.args[0], NumberTerm):
        raise NonNumericResult(atom.args[0] if len(atom.args) == 1 else atom)
    return atom.args[0].n


# ---------------------------------------------------------------- compilation

_MISSING = object()


def _compile_term(term: AspTerm):
    """Return ``(match, build)`` closures for a term pattern.

    ``match(value, binding)`` extends ``binding`` in place and reports
    success; ``build(binding)`` instantiates the pattern.
    """
    if not any(True for _ in term.variables()):
        try:
            value = to_native(term)
        except _Undefined:
            def build(b):
                raise _Undefined

            return (lambda v, b: False), build
        return (lambda v, b: v == value), (lambda b: value)

    if isinstance(term, VariableTerm):
        name = term.name

        def match(v, b):
            cur = b.get(name, _MISSING)
            if cur is _MISSING:
                b[name] = v
                return True
            return cur == v

        def build(b):
            try:
                return b[name]
            except KeyError:
                raise UnboundComparison(f"variable {name} used before it is bound") from None

        return match, build

    if isinstance(term, TupleTerm):
        parts = [_compile_term(i) for i in term.items]
        matchers = [m for m, _ in parts]
        builders = [bd for _, bd in parts]
        n = len(parts)

        def match(v, b):
            if type(v) is not tuple or len(v) != n:
                return False
            for m, item in zip(matchers, v):
                if not m(item, b):
                    return False
            return True

        return match, (lambda b: tuple(bd(b) for bd in builders))

    if isinstance(term, ConstTerm):
        parts = [_compile_term(a) for a in term.args]
        matchers = [m for m, _ in parts]
        builders = [bd for _, bd in parts]
        name, n = term.name, len(parts)

        def match(v, b):
            if type(v) is not Fn or v.name != name or len(v.args) != n:
                return False
            for m, item in zip(matchers, v.args):
                if not m(item, b):
                    return False
            return True

        return match, (lambda b: Fn(name, tuple(bd(b) for bd in builders)))

    if isinstance(term, ArithTerm):
        _, left = _compile_term(term.left)
        _, right = _compile_term(term.right)
        plus = term.op == "+"

        def build(b):
            lv, rv = left(b), right(b)
            if type(lv) is not int or type(rv) is not int:
                raise _Undefined
            return lv + rv if plus else lv - rv

        def match(v, b):
            try:
                return build(b) == v
            except _Undefined:
                return False

        return match, build

    raise TypeError(f"not an ASP term: {term!r}")


_COMPARE = {
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: term_key(a) < term_key(b),
    ">": lambda a, b: term_key(a) > term_key(b),
}


def leaf(value):
    """Leftmost leaf of a ground value, used as a cheap secondary index."""
    while type(value) is tuple:
        if not value:
            return "()"
        value = value[0]
    if type(value) is Fn:
        return value.name + "/"
    return value


def _static_leaf(term):
    while isinstance(term, TupleTerm):
        if not term.items:
            return "()"
        term = term.items[0]
    if isinstance(term, NumberTerm):
        return term.n
    if isinstance(term, ConstTerm):
        return term.name + "/" if term.args else term.name
    return None


class _AtomPattern:
    __slots__ = ("key", "matchers", "builders", "vars", "arith_vars", "first_vars", "leaf")

    def __init__(self, atom: Atom):
        self.key = (atom.predicate, len(atom.args))
        self.leaf = _static_leaf(atom.args[0]) if atom.args else None
        parts = [_compile_term(a) for a in atom.args]
        self.matchers = [m for m, _ in parts]
        self.builders = [bd for _, bd in parts]
        self.vars = set(atom.variables())
        self.arith_vars = self.vars - set().union(*(binding_variables(a) for a in atom.args))
        self.first_vars = set(atom.args[0].variables()) if atom.args else set()

    def build(self, b):
        return tuple(bd(b) for bd in self.builders)


class _Step:
    __slots__ = ("kind", "pattern", "source", "indexed", "test", "left", "right", "var", "lower", "upper")


def _atom_step(pattern, source, bound):
    step = _Step()
    step.kind = "atom"
    step.pattern = pattern
    step.source = source
    step.indexed = source == "full" and bool(pattern.matchers) and pattern.first_vars <= bound
    return step


def _plan(atoms, others, negs, bound_init=(), first=None):
    """Order body literals so each is evaluated once its inputs are bound."""
    bound = set(bound_init)
    steps = []
    remaining = list(range(len(atoms)))
    pending = list(others)
    # the delta atom leads unless it needs variables bound elsewhere (X+1)
    if first is not None and atoms[first].arith_vars <= bound:
        remaining.remove(first)
        steps.append(_atom_step(atoms[first], "delta", bound))
        bound |= atoms[first].vars

    def place_ready():
        progress = True
        while progress:
            progress = False
            for lit in list(pending):
                step = _Step()
                if isinstance(lit, Comparison):
                    if set(lit.variables()) <= bound:
                        step.kind = "cmp"
                        step.test = _COMPARE[lit.op]
                        step.left = _compile_term(lit.left)[1]
                        step.right = _compile_term(lit.right)[1]
                    else:
                        continue
                else:
                    bounds = set(lit.lower.variables()) | set(lit.upper.variables())
                    if not bounds <= bound:
                        continue
                    step.kind = "range"
                    step.var = _compile_term(lit.term)
                    step.lower = _compile_term(lit.lower)[1]
                    step.upper = _compile_term(lit.upper)[1]
                    bound.update(lit.term.variables())
                steps.append(step)
                pending.remove(lit)
                progress = True

    place_ready()
    while remaining:
        ready = [i for i in remaining if atoms[i].arith_vars <= bound | (atoms[i].vars - atoms[i].arith_vars)]
        if first in ready:
            pick = first
        else:
            pick = next((i for i in ready if atoms[i].first_vars <= bound), None)
        if pick is None:
            pick = ready[0] if ready else remaining[0]
        remaining.remove(pick)
        steps.append(_atom_step(atoms[pick], "delta" if pick == first else "full", bound))
        bound |= atoms[pick].vars
        place_ready()
    if pending:
        raise UnboundComparison(f"cannot bind variables of {', '.join(map(str, pending))}")
    for neg in negs:
        step = _Step()
        step.kind = "neg"
        step.pattern = neg
        steps.append(step)
    return steps


class _Relation:
    """Rows of one predicate, hashed on the first argument and on its leaf."""

    __slots__ = ("rows", "index", "leaves")

    def __init__(self):
        self.rows = []
        self.index = {}
        self.leaves = {}

    def add(self, row):
        self.rows.append(row)
        if row:
            self.index.setdefault(row[0], []).append(row)
            self.leaves.setdefault(leaf(row[0]), []).append(row)

    def select(self, pattern) -> list:
        if pattern.leaf is None:
            return self.rows
        return self.leaves.get(pattern.leaf, ())

    def copy(self):
        new = _Relation()
        new.rows = list(self.rows)
        new.index = {k: list(v) for k, v in self.index.items()}
        new.leaves = {k: list(v) for k, v in self.leaves.items()}
        return new


class _Store:
    """Ground atoms, grouped by (predicate, arity) and hashed on the first argument."""

    def __init__(self):
        self.relations: dict = {}
        self.facts: set = set()

    def add(self, key, row) -> bool:
        fact = (key[0], row)
        if fact in self.facts:
            return False
        self.facts.add(fact)
        rel = self.relations.get(key)
        if rel is None:
            rel = self.relations[key] = _Relation()
        rel.add(row)
        return True

    def __contains__(self, fact):
        return fact in self.facts

    def __len__(self):
        return len(self.facts)

    def copy(self) -> "_Store":
        new = _Store()
        new.relations = {k: r.copy() for k, r in self.relations.items()}
        new.facts = set(self.facts)
        return new


def _run(steps, store: _Store, delta: dict, binding: dict, out):
    """Enumerate bindings satisfying ``steps``; calls ``out(binding)`` for each."""
    n = len(steps)

    def go(i, b):
        if i == n:
            out(b)
            return
        step = steps[i]
        kind = step.kind
        if kind == "atom":
            pat = step.pattern
            if step.source == "delta":
                rel = delta.get(pat.key)
                if rel is None:
                    return
                rows = rel.select(pat)
                matchers = pat.matchers
            else:
                rel = store.relations.get(pat.key)
                if rel is None:
                    return
                if step.indexed:
                    try:
                        first = pat.builders[0](b)
                    except _Undefined:
                        return
                    rows = rel.index.get(first, ())
                    matchers = pat.matchers[1:]
                    for row in rows:
                        nb = dict(b)
                        for m, v in zip(matchers, row[1:]):
                            if not m(v, nb):
                                break
                        else:
                            go(i + 1, nb)
                    return
                rows = rel.select(pat)
                matchers = pat.matchers
            for row in rows:
                nb = dict(b)
                for m, v in zip(matchers, row):
                    if not m(v, nb):
                        break
                else:
                    go(i + 1, nb)
        elif kind == "cmp":
            try:
                if step.test(step.left(b), step.right(b)):
                    go(i + 1, b)
            except _Undefined:
                return
        elif kind == "range":
            try:
                lo, hi = step.lower(b), step.upper(b)
            except _Undefined:
                return
            if type(lo) is not int or type(hi) is not int:
                return
            match = step.var[0]
            for v in range(lo, hi + 1):
                nb = dict(b)
                if match(v, nb):
                    go(i + 1, nb)
        else:
            pat = step.pattern
            try:
                row = pat.build(b)
            except _Undefined:
                go(i + 1, b)
                return
            if (pat.key[0], row) not in store:
                go(i + 1, b)

    go(0, dict(binding))


class CompiledRule:
    """A rule split into head builder and per-delta evaluation plans."""

    def __init__(self, rule: AspRule):
        self.rule = rule
        atoms = [lit for lit in rule.body if isinstance(lit, Atom)]
        others = [lit for lit in rule.body if isinstance(lit, (Comparison, RangeCondition))]
        negs = [_AtomPattern(lit.atom) for lit in rule.body if isinstance(lit, NegAtom)]
        self.atoms = [_AtomPattern(a) for a in atoms]
        self.full_plan = _plan(self.atoms, others, negs)
        self.delta_plans = [_plan(self.atoms, others, negs, first=i) for i in range(len(self.atoms))]
        self.head = _AtomPattern(rule.head) if isinstance(rule.head, Atom) else None

    def instances(self, store, delta=None, binding=None) -> list[dict]:
        """All bindings of the body; with ``delta``, only those using a delta atom."""
        found = []
        if delta is None:
            _run(self.full_plan, store, {}, binding or {}, found.append)
        else:
            for plan, pat in zip(self.delta_plans, self.atoms):
                rel = delta.get(pat.key)
                if rel is not None and (pat.leaf is None or pat.leaf in rel.leaves):
                    _run(plan, store, delta, binding or {}, found.append)
        return found


def compile_rules(rules: Iterable[AspRule]) -> list[CompiledRule]:
    compiled = []
    for rule in rules:
        report = check_safety(rule)
        if not report.ok:
            raise UnsafeRule(rule, report.unsafe)
        compiled.append(CompiledRule(rule))
    return compiled


def _delta_add(delta, key, row):
    rel = delta.get(key)
    if rel is None:
        rel = delta[key] = _Relation()
    rel.add(row)


def _fixpoint(rules: list[CompiledRule], store: _Store, delta_facts, budget: GroundBudget, first_round: bool):
    """Semi-naive closure of ``store`` under ``rules``, starting from ``delta_facts``."""
    delta: dict = {}
    for key, row in delta_facts:
        if store.add(key, row):
            _delta_add(delta, key, row)
    if first_round:
        for rule in rules:
            if rule.atoms:
                continue
            for b in rule.instances(store):
                try:
                    row = rule.head.build(b)
                except _Undefined:
                    continue
                if store.add(rule.head.key, row):
                    _delta_add(delta, rule.head.key, row)
    if len(store) > budget.max_atoms:
        raise BudgetExceeded(f"more than {budget.max_atoms} ground atoms")

    iterations = 0
    while delta:
        iterations += 1
        if iterations > budget.max_iterations:
            raise BudgetExceeded(f"more than {budget.max_iterations} iterations")
        new: dict = {}
        pending = []
        for rule in rules:
            if not rule.atoms:
                continue
            for b in rule.instances(store, delta):
                try:
                    pending.append((rule.head.key, rule.head.build(b)))
                except _Undefined:
                    continue
        for key, row in pending:
            if store.add(key, row):
                _delta_add(new, key, row)
        if len(store) > budget.max_atoms:
            raise BudgetExceeded(f"more than {budget.max_atoms} ground atoms")
        delta = new
    return store


def _check_positive(program: AspProgram):
    for rule in program:
        if rule.head is None:
            raise NonPositiveProgram(f"constraint {rule} is not allowed in a positive program")
        if isinstance(rule.head, ChoiceHead):
            raise NonPositiveProgram(f"choice rule {rule} is not allowed in a positive program")
        if any(isinstance(lit, NegAtom) for lit in rule.body):
            raise NonPositiveProgram(f"negation in {rule} is not allowed in a positive program")


def ground_native(rules: list[CompiledRule], budget: GroundBudget, base: Optional[_Store] = None, facts=()) -> _Store:
    """Least model of ``rules`` plus ``facts``; ``base`` must already be closed under ``rules``."""
    if base is None:
        return _fixpoint(rules, _Store(), facts, budget, first_round=True)
    return _fixpoint(rules, base.copy(), facts, budget, first_round=False)


def ground_positive(program: AspProgram, budget: Optional[GroundBudget] = None) -> AnswerSet:
    """Compute the unique answer set (least model) of a safe positive program."""
    _check_positive(program)
    rules = compile_rules(program)
    store = ground_native(rules, budget or GroundBudget())
    return AnswerSet._from_native(store.facts)
