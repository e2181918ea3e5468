"""Big-step call-by-value interpreter for PCF.

The interpreter implements the natural-semantics rules directly (variable
lookup re-evaluates the stored closure, application evaluates the argument
before binding it, ``fix (\\x. e)`` binds ``x`` to the unevaluated fixpoint
closure). It runs on an explicit continuation stack so that divergent
programs exhaust their step budget instead of the Python stack.

Bare ``succ``, ``pred`` and ``fix`` evaluate to themselves, like lambdas;
applying such a value behaves exactly like the corresponding syntactic rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Union

from .errors import PcfError, UnboundVariable
from .syntax import App, Expr, Fix, Ifz, Lam, Num, Pred, Succ, Var, parse_expr

DEFAULT_STEPS = 1_000_000


class EvalError(PcfError):
    """Evaluation got stuck or ran out of budget."""


class PredOfZero(EvalError):
    def __init__(self):
        super().__init__("pred of zero")


class NotAFunction(EvalError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"cannot apply the number {value} as a function")


class NotANumber(EvalError):
    def __init__(self, where: str):
        super().__init__(f"{where} expects a number, got a closure")


class FixNotLambda(EvalError):
    def __init__(self):
        super().__init__("fix applied to something other than a lambda")


class BudgetExhausted(EvalError):
    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f"step budget of {steps} exhausted (possible divergence)")


class Env:
    """Persistent mapping from identifiers to closures."""

    __slots__ = ("_bindings",)

    def __init__(self, bindings: Mapping[str, "Closure"] | None = None):
        self._bindings = dict(bindings or {})

    @property
    def bindings(self) -> Mapping[str, "Closure"]:
        return MappingProxyType(self._bindings)

    def extend(self, name: str, closure: "Closure") -> "Env":
        new = Env.__new__(Env)
        new._bindings = {**self._bindings, name: closure}
        return new

    def lookup(self, name: str) -> "Closure":
        try:
            return self._bindings[name]
        except KeyError:
            raise UnboundVariable(name) from None

    def __contains__(self, name):
        return name in self._bindings

    def __len__(self):
        return len(self._bindings)

    def __eq__(self, other):
        return isinstance(other, Env) and self._bindings == other._bindings

    def __hash__(self):
        return hash(frozenset(self._bindings.items()))

    def __repr__(self):
        return f"Env({self._bindings!r})"


EMPTY_ENV = Env()


@dataclass(frozen=True)
class Closure:
    env: Env
    expr: Expr


@dataclass(frozen=True)
class NatValue:
    n: int

    def __str__(self):
        return str(self.n)


@dataclass(frozen=True)
class ClosureValue:
    closure: Closure

    def __str__(self):
        return "<closure>"


Value = Union[NatValue, ClosureValue]


@dataclass(frozen=True)
class StepBudget:
    remaining: int = DEFAULT_STEPS

    def __post_init__(self):
        if self.remaining < 0:
            raise ValueError("budget must be non-negative")


def as_closure(value: Value) -> Closure:
    """A number used as a closure is wrapped with the empty environment."""
    if isinstance(value, NatValue):
        return Closure(EMPTY_ENV, Num(value.n))
    return value.closure


# continuation frames
@dataclass(frozen=True)
class _EvalArg:
    env: Env
    arg: Expr


@dataclass(frozen=True)
class _Apply:
    fn: Value


@dataclass(frozen=True)
class _Branch:
    env: Env
    then: Expr
    orelse: Expr


def evaluate(closure: Closure, budget: StepBudget | int | None = None) -> Value:
    """Evaluate ``closure`` to a value; every rule application costs one step."""
    if budget is None:
        budget = StepBudget()
    elif isinstance(budget, int):
        budget = StepBudget(budget)
    limit = budget.remaining
    steps = 0
    stack: list = []
    env, expr = closure.env, closure.expr
    value = None

    while True:
        if expr is not None:
            steps += 1
            if steps > limit:
                raise BudgetExhausted(limit)
            if isinstance(expr, Var):
                target = env.lookup(expr.name)
                env, expr = target.env, target.expr
                continue
            if isinstance(expr, App):
                stack.append(_EvalArg(env, expr.arg))
                expr = expr.fn
                continue
            if isinstance(expr, Ifz):
                stack.append(_Branch(env, expr.then, expr.orelse))
                expr = expr.cond
                continue
            if isinstance(expr, Num):
                value = NatValue(expr.value)
            elif isinstance(expr, (Lam, Succ, Pred, Fix)):
                value = ClosureValue(Closure(env, expr))
            else:
                raise TypeError(f"not a PCF expression: {expr!r}")
            expr = None

        if not stack:
            return value
        frame = stack.pop()
        if isinstance(frame, _EvalArg):
            stack.append(_Apply(value))
            env, expr = frame.env, frame.arg
        elif isinstance(frame, _Branch):
            if not isinstance(value, NatValue):
                raise NotANumber("ifz")
            env = frame.env
            expr = frame.then if value.n == 0 else frame.orelse
        else:
            env, expr, value = _apply(frame.fn, value)


def _apply(fn: Value, arg: Value):
    """Apply a function value; returns the next (env, expr, value) state."""
    if isinstance(fn, NatValue):
        raise NotAFunction(fn.n)
    target = fn.closure.expr
    if isinstance(target, Lam):
        return fn.closure.env.extend(target.param, as_closure(arg)), target.body, None
    if isinstance(target, Succ):
        if not isinstance(arg, NatValue):
            raise NotANumber("succ")
        return None, None, NatValue(arg.n + 1)
    if isinstance(target, Pred):
        if not isinstance(arg, NatValue):
            raise NotANumber("pred")
        if arg.n == 0:
            raise PredOfZero()
        return None, None, NatValue(arg.n - 1)
    if isinstance(target, Fix):
        if not (isinstance(arg, ClosureValue) and isinstance(arg.closure.expr, Lam)):
            raise FixNotLambda()
        lam_env, lam = arg.closure.env, arg.closure.expr
        recursive = Closure(lam_env, App(Fix(), lam))
        return lam_env.extend(lam.param, recursive), lam.body, None
    raise TypeError(f"closure does not hold a function: {target!r}")


def evaluate_expr(e: Expr, env: Env = EMPTY_ENV, budget: StepBudget | int | None = None) -> Value:
    return evaluate(Closure(env, e), budget)


def run_source(text: str, budget: StepBudget | int | None = None) -> Value:
    """Parse and evaluate closed PCF source text."""
    return evaluate(Closure(EMPTY_ENV, parse_expr(text)), budget)
