"""ASP intermediate representation.

Terms, literals and rules are immutable; ``str()`` of any node yields its
ASP-Core-2 text (see :mod:`pcf2asp.asp.emit`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

CONST_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
VAR_RE = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")

COMPARISON_OPS = ("<", ">", "=", "!=")


class AspTerm:
    __slots__ = ()

    def __str__(self):
        from .emit import emit_term

        return emit_term(self)

    def variables(self) -> Iterator[str]:
        return iter(())


@dataclass(frozen=True, repr=False)
class NumberTerm(AspTerm):
    n: int

    def __repr__(self):
        return f"NumberTerm({self.n})"


@dataclass(frozen=True, repr=False)
class ConstTerm(AspTerm):
    """A named constant, or a function term ``name(args)`` when args is non-empty."""

    name: str
    args: tuple = ()

    def __post_init__(self):
        if not CONST_RE.match(self.name):
            raise ValueError(f"invalid constant name {self.name!r}")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def variables(self):
        for a in self.args:
            yield from a.variables()

    def __repr__(self):
        if self.args:
            return f"ConstTerm({self.name!r}, {self.args!r})"
        return f"ConstTerm({self.name!r})"


@dataclass(frozen=True, repr=False)
class VariableTerm(AspTerm):
    name: str

    def __post_init__(self):
        if not VAR_RE.match(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")

    def variables(self):
        yield self.name

    def __repr__(self):
        return f"VariableTerm({self.name!r})"


@dataclass(frozen=True, repr=False)
class TupleTerm(AspTerm):
    items: tuple = ()

    def __post_init__(self):
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(self.items))

    def variables(self):
        for item in self.items:
            yield from item.variables()

    def __repr__(self):
        return f"TupleTerm({self.items!r})"


@dataclass(frozen=True, repr=False)
class ArithTerm(AspTerm):
    op: str
    left: AspTerm
    right: AspTerm

    def __post_init__(self):
        if self.op not in ("+", "-"):
            raise ValueError(f"unsupported arithmetic operator {self.op!r}")

    def variables(self):
        yield from self.left.variables()
        yield from self.right.variables()

    def __repr__(self):
        return f"ArithTerm({self.op!r}, {self.left!r}, {self.right!r})"


def is_ground(term: AspTerm) -> bool:
    return next(term.variables(), None) is None


# ---------------------------------------------------------------- literals

class AspLiteral:
    __slots__ = ()

    def __str__(self):
        from .emit import emit_literal

        return emit_literal(self)

    def variables(self) -> Iterator[str]:
        return iter(())


@dataclass(frozen=True, repr=False)
class Atom(AspLiteral):
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        if not CONST_RE.match(self.predicate):
            raise ValueError(f"invalid predicate name {self.predicate!r}")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    def variables(self):
        for a in self.args:
            yield from a.variables()

    def __repr__(self):
        return f"Atom({self.predicate!r}, {self.args!r})"


@dataclass(frozen=True, repr=False)
class NegAtom(AspLiteral):
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        if not CONST_RE.match(self.predicate):
            raise ValueError(f"invalid predicate name {self.predicate!r}")
        if not isinstance(self.args, tuple):
            object.__setattr__(self, "args", tuple(self.args))

    @property
    def atom(self) -> Atom:
        return Atom(self.predicate, self.args)

    def variables(self):
        for a in self.args:
            yield from a.variables()

    def __repr__(self):
        return f"NegAtom({self.predicate!r}, {self.args!r})"


@dataclass(frozen=True, repr=False)
class Comparison(AspLiteral):
    op: str
    left: AspTerm
    right: AspTerm

    def __post_init__(self):
        if self.op == "<>":
            object.__setattr__(self, "op", "!=")
        if self.op not in COMPARISON_OPS:
            raise ValueError(f"unsupported comparison {self.op!r}")

    def variables(self):
        yield from self.left.variables()
        yield from self.right.variables()

    def __repr__(self):
        return f"Comparison({self.op!r}, {self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class RangeCondition(AspLiteral):
    """``term = lower..upper``; binds ``term`` when it is an unbound variable."""

    term: AspTerm
    lower: AspTerm
    upper: AspTerm

    def variables(self):
        yield from self.term.variables()
        yield from self.lower.variables()
        yield from self.upper.variables()

    def __repr__(self):
        return f"RangeCondition({self.term!r}, {self.lower!r}, {self.upper!r})"


Literal = Union[Atom, NegAtom, Comparison, RangeCondition]


# ---------------------------------------------------------------- rules

@dataclass(frozen=True)
class ChoiceHead:
    """``lower {template : condition} upper``; ``upper=None`` means unbounded."""

    lower: int
    upper: Optional[int]
    template: Atom
    condition: tuple = ()

    def __post_init__(self):
        if not isinstance(self.condition, tuple):
            object.__setattr__(self, "condition", tuple(self.condition))
        if self.lower < 0 or (self.upper is not None and self.upper < self.lower):
            raise ValueError("choice bounds must satisfy 0 <= lower <= upper")

    def variables(self):
        yield from self.template.variables()
        for lit in self.condition:
            yield from lit.variables()

    def __str__(self):
        from .emit import emit_choice

        return emit_choice(self)


@dataclass(frozen=True)
class AspRule:
    head: Union[Atom, ChoiceHead, None]
    body: tuple = ()

    def __post_init__(self):
        if not isinstance(self.body, tuple):
            object.__setattr__(self, "body", tuple(self.body))
        if self.head is None and not self.body:
            raise ValueError("a constraint needs a non-empty body")
        if isinstance(self.head, (NegAtom, Comparison, RangeCondition)):
            raise ValueError("rule heads must be atoms or choice heads")

    @property
    def is_fact(self) -> bool:
        return isinstance(self.head, Atom) and not self.body

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_choice(self) -> bool:
        return isinstance(self.head, ChoiceHead)

    def variables(self) -> set[str]:
        names = set()
        if self.head is not None:
            names.update(self.head.variables())
        for lit in self.body:
            names.update(lit.variables())
        return names

    def __str__(self):
        from .emit import emit_rule

        return emit_rule(self)


@dataclass(frozen=True)
class AspProgram:
    rules: tuple = ()

    def __post_init__(self):
        if not isinstance(self.rules, tuple):
            object.__setattr__(self, "rules", tuple(self.rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def __getitem__(self, index):
        return self.rules[index]

    def __add__(self, other):
        if isinstance(other, AspProgram):
            return AspProgram(self.rules + other.rules)
        return AspProgram(self.rules + tuple(other))

    def __str__(self):
        from .emit import emit

        return emit(self)


# ---------------------------------------------------------------- helpers

def num(n: int) -> NumberTerm:
    return NumberTerm(n)


def const(name: str, *args: AspTerm) -> ConstTerm:
    return ConstTerm(name, tuple(args))


def var(name: str) -> VariableTerm:
    return VariableTerm(name)


def tup(*items: AspTerm) -> TupleTerm:
    return TupleTerm(tuple(items))


def atom(predicate: str, *args: AspTerm) -> Atom:
    return Atom(predicate, tuple(args))
