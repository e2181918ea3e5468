import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcf2asp.asp import (
    ArithTerm,
    AspProgram,
    AspRule,
    Atom,
    ConstTerm,
    NumberTerm,
    TupleTerm,
    VariableTerm,
    parse_program,
)
from pcf2asp.corpus import corpus
from pcf2asp.grounder import (
    AmbiguousResult,
    AnswerSet,
    BudgetExceeded,
    GroundAtom,
    GroundBudget,
    NonNumericResult,
    NonPositiveProgram,
    UnsafeRule,
    extract_result,
    ground_positive,
)
from pcf2asp.syntax import parse_expr
from pcf2asp.transpiler import static_preamble, translate

NAMES = [name for name, _ in corpus()]


def answer(text):
    return AnswerSet(GroundAtom.parse(a) for a in text.split())


def test_countdown_d_example():
    a = ground_positive(parse_program("d(1). d(X-1) :- d(X), X > 0."))
    assert a == answer("d(0) d(1)")


def test_preamble_succ():
    a = ground_positive(static_preamble() + parse_program("domain(succ,1)."))
    assert "inter((succ,1),2)" in a


def test_empty_program():
    assert ground_positive(AspProgram(())) == AnswerSet()


def test_ifz_dispatch_result():
    a = ground_positive(translate(parse_expr(r"(\x. ifz x then succ else pred) 2 4")))
    assert extract_result(a) == 3


def test_extract_result_cases():
    assert extract_result(answer("result(3) domain(succ,1)")) == 3
    assert extract_result(AnswerSet()) is None
    with pytest.raises(AmbiguousResult):
        extract_result(answer("result(1) result(2)"))
    with pytest.raises(NonNumericResult):
        extract_result(answer("result((l0,()))"))


def test_negative_arithmetic_is_inert():
    a = ground_positive(parse_program("p(0). q(X-1) :- p(X). r(X) :- q(X), X > 0."))
    assert a == answer("p(0) q(-1)")


def test_comparisons_over_compound_terms():
    a = ground_positive(parse_program("p((a,1)). p((a,2)). q(X) :- p(X), X != (a,1)."))
    assert "q((a,2))" in a and "q((a,1))" not in a


def test_atom_budget():
    with pytest.raises(BudgetExceeded):
        ground_positive(parse_program("n(0). n(X+1) :- n(X)."), GroundBudget(max_atoms=100))


def test_iteration_budget():
    with pytest.raises(BudgetExceeded):
        ground_positive(parse_program("n(0). n(X+1) :- n(X)."), GroundBudget(max_iterations=50))


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        GroundBudget(max_atoms=0)


def test_unsafe_rule_rejected():
    with pytest.raises(UnsafeRule):
        ground_positive(parse_program("p(X) :- q(Y). q(1)."))


@pytest.mark.parametrize("text", ["1 {a(1)} 1.", ":- p(1).", "p(1) :- not q(1)."])
def test_non_positive_rejected(text):
    with pytest.raises(NonPositiveProgram):
        ground_positive(parse_program(text))


def test_divergent_fix_hits_budget():
    program = translate(parse_expr(r"(fix (\f. \x. f (succ x))) 0"))
    with pytest.raises(BudgetExceeded):
        ground_positive(program, GroundBudget(max_atoms=5_000))


def test_format_is_sorted():
    a = ground_positive(parse_program("q(b). q(a). p(2). p(10). q(1)."))
    assert a.format() == "p(2) p(10) q(1) q(a) q(b)"


# ---------------------------------------------------------------- oracle

def _subst(term, env):
    if isinstance(term, VariableTerm):
        return env[term.name]
    if isinstance(term, ConstTerm):
        return ConstTerm(term.name, tuple(_subst(a, env) for a in term.args))
    if isinstance(term, TupleTerm):
        return TupleTerm(tuple(_subst(a, env) for a in term.items))
    if isinstance(term, ArithTerm):
        left, right = _subst(term.left, env), _subst(term.right, env)
        if not (isinstance(left, NumberTerm) and isinstance(right, NumberTerm)):
            return None
        return NumberTerm(left.n + right.n if term.op == "+" else left.n - right.n)
    return term


def _contains_none(term):
    if term is None:
        return True
    return any(_contains_none(c) for c in getattr(term, "args", ()) or getattr(term, "items", ()))


def _compare(op, a, b):
    if op == "=":
        return a == b
    if op == "!=":
        return a != b
    if not (isinstance(a, NumberTerm) and isinstance(b, NumberTerm)):
        return False
    return a.n < b.n if op == "<" else a.n > b.n


def _universe(atoms):
    out = set()

    def walk(t):
        out.add(t)
        for c in getattr(t, "args", ()) or getattr(t, "items", ()):
            walk(c)

    for a in atoms:
        for t in a.args:
            walk(t)
    return out


def _instances(rule, universe):
    names = sorted({v for v in rule.variables()})
    for values in itertools.product(sorted(universe, key=str), repeat=len(names)):
        env = dict(zip(names, values))
        head = rule.head
        args = tuple(_subst(t, env) for t in head.args)
        if any(_contains_none(t) for t in args):
            continue
        body, ok = [], True
        for lit in rule.body:
            if isinstance(lit, Atom):
                largs = tuple(_subst(t, env) for t in lit.args)
                if any(_contains_none(t) for t in largs):
                    ok = False
                    break
                body.append(GroundAtom(lit.predicate, largs))
            else:
                l, r = _subst(lit.left, env), _subst(lit.right, env)
                if l is None or r is None or not _compare(lit.op, l, r):
                    ok = False
                    break
        if ok:
            yield GroundAtom(head.predicate, args), body


def naive_least_model(program, universe):
    model = set()
    while True:
        new = {h for rule in program for h, body in _instances(rule, universe) if all(b in model for b in body)}
        if new <= model:
            return model
        model |= new


SMALL_PROGRAMS = [
    "d(2). d(X-1) :- d(X), X > 0.",
    "p(1). p(2). p(3). q(X,Y) :- p(X), p(Y), X < Y. r(X+Y) :- q(X,Y).",
    "e(a,b). e(b,c). e(c,a). t(X,Y) :- e(X,Y). t(X,Z) :- e(X,Y), t(Y,Z).",
    "s((a,1)). s((b,2)). k(X) :- s((X,N)), N > 1. k(N) :- s((a,N)).",
    "f(g(1)). h(X) :- f(g(X)). f(g(X+1)) :- h(X), X < 3.",
    "n(0). n(X+1) :- n(X), X < 4. even(0). odd(X+1) :- even(X), n(X+1). even(X+1) :- odd(X), n(X+1).",
    "a(1). b(X) :- a(X). c(X) :- b(X), a(X). d(X) :- c(X), X = 1.",
    "p(()). p((1,)). q(X) :- p(X), X != ().",
    "inter((succ,1),2). r(Y) :- inter((succ,X),Y).",
    "x(1). x(2). y(X) :- x(X), X != 1. z(X,Y) :- y(X), x(Y).",
]


@pytest.mark.parametrize("text", SMALL_PROGRAMS)
def test_matches_naive_oracle(text):
    program = parse_program(text)
    got = ground_positive(program)
    # any instantiation only binds variables to terms of the model itself
    expected = naive_least_model(program, _universe(got.atoms))
    assert set(got.atoms) == expected


@pytest.mark.parametrize("text", SMALL_PROGRAMS)
def test_model_property(text):
    program = parse_program(text)
    got = ground_positive(program)
    for rule in program:
        for head, body in _instances(rule, _universe(got.atoms)):
            if all(b in got.atoms for b in body):
                assert head in got.atoms


SHUFFLE_PROGRAMS = SMALL_PROGRAMS[:6] + [
    translate(parse_expr(src)) for _, src in corpus()[:4]
]


@pytest.mark.parametrize("index", range(10))
def test_rule_order_independence(index):
    program = SHUFFLE_PROGRAMS[index]
    if isinstance(program, str):
        program = parse_program(program)
    rules = list(program)
    reference = ground_positive(program)
    rng = random.Random(index)
    for _ in range(20):
        rng.shuffle(rules)
        assert ground_positive(AspProgram(tuple(rules))) == reference


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(SMALL_PROGRAMS), st.lists(st.integers(-3, 6), max_size=4), st.sampled_from("pqdenx"))
def test_monotonicity(text, values, pred):
    program = parse_program(text)
    base = ground_positive(program)
    extra = tuple(AspRule(Atom(pred, (NumberTerm(v),))) for v in values)
    bigger = ground_positive(program + AspProgram(extra))
    assert base.atoms <= bigger.atoms


@pytest.mark.parametrize("name, src", corpus(), ids=NAMES)
def test_differential_soundness(name, src):
    from pcf2asp.evaluator import NatValue, evaluate_expr

    e = parse_expr(src)
    value = evaluate_expr(e)
    assert isinstance(value, NatValue)
    assert extract_result(ground_positive(translate(e))) == value.n
