"""Translation of PCF expressions into positive ASP programs.

Every expression translates to a program, a term ``t`` standing for its
value and an ordered safety body ``S`` that binds the variables of ``t``.
Functions are represented by terms; ``inter((F,X),Y)`` holds when ``F``
maps ``X`` to ``Y`` and ``domain(F,X)`` marks the arguments ``F`` is
actually applied to, so only the demanded part of each function is ever
grounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .asp.terms import (
    ArithTerm,
    AspProgram,
    AspRule,
    AspTerm,
    Atom,
    Comparison,
    ConstTerm,
    NumberTerm,
    TupleTerm,
    VariableTerm,
)
from .errors import UnboundVariable
from .syntax import App, Expr, Fix, Ifz, Lam, Num, Pred, Succ, Var, free_vars

INTER = "inter"
DOMAIN = "domain"
RESULT = "result"

_F = VariableTerm("F")
_X = VariableTerm("X")
_Y = VariableTerm("Y")
_FIX = VariableTerm("FIX")
_ZERO = NumberTerm(0)


def inter(fn: AspTerm, arg: AspTerm, value: AspTerm) -> Atom:
    return Atom(INTER, (TupleTerm((fn, arg)), value))


def domain(fn: AspTerm, arg: AspTerm) -> Atom:
    return Atom(DOMAIN, (fn, arg))


def static_preamble() -> AspProgram:
    """Rules interpreting the builtins ``pred``, ``succ`` and ``fix``.

    ``f(F)`` is a symbolic stand-in for the fixpoint of ``F``; the last two
    rules push demand through it.
    """
    pred, succ, fix = ConstTerm("pred"), ConstTerm("succ"), ConstTerm("fix")
    f_of_f = ConstTerm("f", (_F,))
    return AspProgram((
        AspRule(inter(pred, _X, ArithTerm("-", _X, NumberTerm(1))),
                (domain(pred, _X), Comparison(">", _X, _ZERO))),
        AspRule(inter(succ, _X, ArithTerm("+", _X, NumberTerm(1))),
                (domain(succ, _X),)),
        AspRule(inter(fix, _F, _Y),
                (domain(fix, _F), inter(_F, f_of_f, _Y))),
        AspRule(inter(f_of_f, _X, _Y),
                (domain(f_of_f, _X), inter(_F, f_of_f, _FIX), inter(_FIX, _X, _Y))),
        AspRule(domain(_F, f_of_f), (domain(fix, _F),)),
        AspRule(domain(_FIX, _X), (domain(f_of_f, _X), inter(_F, f_of_f, _FIX))),
    ))


PREAMBLE_SIZE = 6


@dataclass(frozen=True)
class TransEnv:
    """Translation environment: identifier -> ASP term, plus safety body.

    ``choices`` holds identifiers that are bound for the whole program by a
    choice rule (search problems). They translate to their variable together
    with their guard atom and are never part of a scope tuple.
    """

    var_map: Mapping[str, AspTerm] = field(default_factory=dict)
    safety: tuple = ()
    choices: Mapping[str, tuple] = field(default_factory=dict)

    def bind(self, name: str, term: AspTerm, extra_safety=()) -> "TransEnv":
        return TransEnv({**self.var_map, name: term}, _union(self.safety, extra_safety), self.choices)

    def with_safety(self, safety) -> "TransEnv":
        return TransEnv(self.var_map, tuple(safety), self.choices)


class FreshSupply:
    """Counters for fresh ASP constants and variables.

    Lambda (``l``) and if-zero (``ite``) constants share one counter.
    """

    def __init__(self):
        self.const_counter = 0
        self.var_counter = 0

    def constant(self, prefix: str) -> ConstTerm:
        name = f"{prefix}{self.const_counter}"
        self.const_counter += 1
        return ConstTerm(name)

    def variable(self) -> VariableTerm:
        name = f"X{self.var_counter}"
        self.var_counter += 1
        return VariableTerm(name)


@dataclass(frozen=True)
class TransResult:
    program: tuple
    term: AspTerm
    safety: tuple


def _union(*parts) -> tuple:
    seen = {}
    for part in parts:
        for lit in part:
            seen.setdefault(lit, None)
    return tuple(seen)


def scope_term(env: TransEnv, used: Optional[frozenset] = None) -> TupleTerm:
    """Tuple of the environment's codomain, outermost binder first.

    With ``used`` given, only the listed identifiers are kept.
    """
    if used is None:
        return TupleTerm(tuple(env.var_map.values()))
    return TupleTerm(tuple(t for name, t in env.var_map.items() if name in used))


def prune_scope(e: Expr) -> dict:
    """Map every lambda and if-zero node of ``e`` to the identifiers it uses."""
    out = {}

    def walk(node):
        if isinstance(node, (Lam, Ifz)):
            out[node] = free_vars(node)
        if isinstance(node, App):
            walk(node.fn)
            walk(node.arg)
        elif isinstance(node, Lam):
            walk(node.body)
        elif isinstance(node, Ifz):
            walk(node.cond)
            walk(node.then)
            walk(node.orelse)

    walk(e)
    return out


_BUILTIN_TERMS = {Succ: ConstTerm("succ"), Pred: ConstTerm("pred"), Fix: ConstTerm("fix")}


class Translator:
    """One translation session; owns its fresh-name supply."""

    def __init__(self, prune: bool = False, trace: Optional[list] = None):
        self.fresh = FreshSupply()
        self.prune = prune
        self.trace = trace
        self._used: dict = {}

    def _scope(self, env: TransEnv, node: Expr) -> TupleTerm:
        if not self.prune:
            return scope_term(env)
        used = self._used.get(node)
        if used is None:
            used = self._used[node] = free_vars(node)
        return scope_term(env, used)

    def translate_sub(self, env: TransEnv, e: Expr) -> TransResult:
        result = self._translate(env, e)
        if self.trace is not None:
            self.trace.append((e, env.safety, result.safety))
        return result

    def _translate(self, env: TransEnv, e: Expr) -> TransResult:
        S = env.safety
        if isinstance(e, Num):
            return TransResult((), NumberTerm(e.value), S)
        if type(e) in _BUILTIN_TERMS:
            return TransResult((), _BUILTIN_TERMS[type(e)], S)

        if isinstance(e, Var):
            if e.name in env.var_map:
                return TransResult((), env.var_map[e.name], S)
            if e.name in env.choices:
                term, guard = env.choices[e.name]
                return TransResult((), term, _union(S, (guard,)))
            raise UnboundVariable(e.name)

        if isinstance(e, App):
            r1 = self.translate_sub(env, e.fn)
            r2 = self.translate_sub(env, e.arg)
            body = _union(r1.safety, r2.safety)
            x = self.fresh.variable()
            rule = AspRule(domain(r1.term, r2.term), body)
            return TransResult(
                r1.program + r2.program + (rule,),
                x,
                _union(body, (inter(r1.term, r2.term, x),)),
            )

        if isinstance(e, Lam):
            x = self.fresh.variable()
            label = self.fresh.constant("l")
            fn = TupleTerm((label, self._scope(env, e)))
            guard = domain(fn, x)
            r = self.translate_sub(env.bind(e.param, x, (guard,)), e.body)
            rule = AspRule(inter(fn, x, r.term), r.safety)
            return TransResult(r.program + (rule,), fn, S)

        if isinstance(e, Ifz):
            rc = self.translate_sub(env, e.cond)
            rt = self.translate_sub(env.with_safety(_union(rc.safety, (Comparison("=", rc.term, _ZERO),))), e.then)
            re_ = self.translate_sub(env.with_safety(_union(rc.safety, (Comparison("!=", rc.term, _ZERO),))), e.orelse)
            label = self.fresh.constant("ite")
            x = self.fresh.variable()
            fn = TupleTerm((label, self._scope(env, e)))
            rules = (
                AspRule(Atom(INTER, (fn, rt.term)), rt.safety),
                AspRule(Atom(INTER, (fn, re_.term)), re_.safety),
            )
            return TransResult(
                rc.program + rt.program + re_.program + rules,
                x,
                _union(S, (Atom(INTER, (fn, x)),)),
            )

        raise TypeError(f"not a PCF expression: {e!r}")

    def result_rule(self, r: TransResult) -> AspRule:
        return AspRule(Atom(RESULT, (r.term,)), r.safety)


def translate_sub(env: TransEnv, e: Expr, fresh: Optional[FreshSupply] = None, prune: bool = False) -> TransResult:
    """Apply the translation relation to ``e`` under ``env``."""
    translator = Translator(prune=prune)
    if fresh is not None:
        translator.fresh = fresh
    return translator.translate_sub(env, e)


def translate_dynamic(e: Expr, prune: bool = False, env: Optional[TransEnv] = None, trace=None) -> AspProgram:
    """Translation of ``e`` without the static preamble, ending in the result rule."""
    translator = Translator(prune=prune, trace=trace)
    r = translator.translate_sub(env or TransEnv(), e)
    return AspProgram(r.program + (translator.result_rule(r),))


def translate(e: Expr, prune: bool = False) -> AspProgram:
    """Full ASP translation of a closed expression."""
    return static_preamble() + translate_dynamic(e, prune=prune)
