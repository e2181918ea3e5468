import itertools
from pathlib import Path

import pytest

from pcf2asp.asp import AspProgram, AspRule, Atom, ChoiceHead, NumberTerm, emit, parse_program
from pcf2asp.errors import PcfError
from pcf2asp.evaluator import EMPTY_ENV, Closure, Env, NatValue, evaluate_expr
from pcf2asp.grounder import AnswerSet, GroundAtom, ground_positive
from pcf2asp.search import (
    SearchProblem,
    UndeclaredFreeVariable,
    UnsupportedRuleForm,
    VarDecl,
    assignment_of,
    choice_rule,
    export_for_external_solver,
    load_problem,
    read_header_decls,
    solve_enumerative,
    transpile_with_choices,
)
from pcf2asp.syntax import Num, parse_expr
from pcf2asp.transpiler import translate

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"

CHOICE_SUM = """
p(1). p(2). p(3). p(4).
1 {q(X) : p(X) } 2.
r(X + Y) :- q(X), q(Y).
:- not r(5).
"""


def answer(text):
    return AnswerSet(GroundAtom.parse(a) for a in text.split())


def test_choice_sum_models():
    models = solve_enumerative(parse_program(CHOICE_SUM))
    assert models == [
        answer("p(1) p(2) p(3) p(4) q(1) q(4) r(2) r(5) r(8)"),
        answer("p(1) p(2) p(3) p(4) q(2) q(3) r(4) r(5) r(6)"),
    ]


def test_choice_sum_without_constraint():
    # every subset of size 1 or 2 of {1,2,3,4}
    text = CHOICE_SUM.replace(":- not r(5).", "")
    assert len(solve_enumerative(parse_program(text))) == 4 + 6


def test_choice_rule_text():
    assert str(choice_rule(VarDecl("a", 1, 10))) == "1 {a(X) : X=1..10} 1."


def test_single_variable_problem():
    program = transpile_with_choices(SearchProblem(parse_expr("a"), (VarDecl("a", 1, 10),)))
    lines = emit(program).splitlines()
    assert lines[0] == "1 {a(X) : X=1..10} 1."
    assert lines[-1] == "result(A):-a(A)."
    models = solve_enumerative(program)
    assert len(models) == 10
    for m in models:
        (chosen,) = m.with_predicate("a")
        assert f"result({chosen.args[0]})" in m


def test_pred_a_requires_one():
    problem = SearchProblem(parse_expr("pred a"), (VarDecl("a", 1, 10),), require_zero=True)
    models = solve_enumerative(transpile_with_choices(problem))
    assert len(models) == 1
    assert assignment_of(models[0], problem.decls) == {"a": 1}


def test_closed_problem_degenerates_to_translate():
    problem = SearchProblem(parse_expr(r"(\x. succ x) 2"))
    assert emit(transpile_with_choices(problem)) == emit(translate(problem.expr))


def test_closed_zero_one_model():
    models = solve_enumerative(transpile_with_choices(SearchProblem(Num(0), require_zero=True)))
    assert len(models) == 1 and "result(0)" in models[0]


def test_abc_shape():
    problem = load_problem((PROGRAMS / "abc.pcf").read_text(), require_zero=True)
    lines = emit(transpile_with_choices(problem)).splitlines()
    assert lines[:4] == [
        "1 {a(X) : X=1..10} 1.",
        "1 {b(X) : X=1..10} 1.",
        "1 {c(X) : X=1..10} 1.",
        ":-not result(0).",
    ]
    assert "domain(X1,A):-domain((l0,()),X0),domain((l1,(X0)),X1),a(A)." in lines


def test_undeclared_variable():
    with pytest.raises(UndeclaredFreeVariable):
        transpile_with_choices(SearchProblem(parse_expr("succ a")))


def test_decl_validation():
    with pytest.raises(ValueError):
        VarDecl("a", 5, 2)
    with pytest.raises(ValueError):
        VarDecl("Abc", 0, 1)
    with pytest.raises(ValueError):
        VarDecl("result", 0, 1)
    with pytest.raises(ValueError):
        SearchProblem(Num(0), (VarDecl("a", 0, 1), VarDecl("a", 0, 2)))
    assert VarDecl.parse(" a = 0..3 ") == VarDecl("a", 0, 3)


def test_header_decls():
    decls = read_header_decls("# var x = 0..2\n#var y=1..1\nsucc x")
    assert decls == [VarDecl("x", 0, 2), VarDecl("y", 1, 1)]
    problem = load_problem("#var x = 0..2\nx", [VarDecl("x", 3, 4)])
    assert problem.decls == (VarDecl("x", 3, 4),)


def test_variable_named_like_translator_variable():
    problem = SearchProblem(parse_expr("pred x0"), (VarDecl("x0", 1, 3),), require_zero=True)
    models = solve_enumerative(transpile_with_choices(problem))
    assert [assignment_of(m, problem.decls) for m in models] == [{"x0": 1}]


def test_negation_outside_constraints_unsupported():
    with pytest.raises(UnsupportedRuleForm):
        solve_enumerative(parse_program("p(1). q(X) :- p(X), not r(X)."))


def test_max_models():
    assert len(solve_enumerative(parse_program("1 {a(X) : X = 1..5} 1."), max_models=2)) == 2


def test_unbounded_choice():
    models = solve_enumerative(parse_program("p(1). p(2). 0 {q(X) : p(X)}."))
    assert len(models) == 4


def test_choice_with_body():
    models = solve_enumerative(parse_program("s(1). s(2). 1 {t(X,Y) : Y = 0..1} 1 :- s(X)."))
    assert len(models) == 4


def test_unsupported_constraint_variable_is_unsafe():
    with pytest.raises(PcfError):
        solve_enumerative(parse_program(":- not p(X)."))


# ---------------------------------------------------------------- oracles

def brute_force(problem):
    """Assignments whose substituted program evaluates to zero (or all, without the filter)."""
    names = [d.name for d in problem.decls]
    out = []
    for values in itertools.product(*(d.values for d in problem.decls)):
        env = Env({n: Closure(EMPTY_ENV, Num(v)) for n, v in zip(names, values)})
        try:
            value = evaluate_expr(problem.expr, env)
        except PcfError:
            value = None
        if not problem.require_zero or value == NatValue(0):
            out.append(dict(zip(names, values)))
    return out


EQUAL = r"(fix (\eq. \x. \y. ifz x then (ifz y then 0 else 1) else (ifz y then 1 else eq (pred x) (pred y))))"

ORACLE_CASES = [
    ("pred a", [("a", 0, 6)], True),
    ("pred a", [("a", 0, 6)], False),
    (f"{EQUAL} a b", [("a", 0, 5), ("b", 2, 4)], True),
    (f"{EQUAL} (succ a) (pred b)", [("a", 0, 4), ("b", 0, 6)], True),
    (r"ifz a then b else (\x. pred x) b", [("a", 0, 2), ("b", 0, 3)], True),
    (r"(\f. f a) (\x. ifz x then 1 else 0)", [("a", 0, 3)], True),
    ((PROGRAMS / "abc.pcf").read_text(), [("a", 1, 4), ("b", 1, 4), ("c", 1, 4)], True),
]


ORACLE_IDS = ["pred-zero", "pred-all", "equal", "equal-shifted", "ifz-vars", "higher-order", "abc-small"]


def _problem(src, decls, zero):
    return load_problem(src, [VarDecl(*d) for d in decls], zero)


@pytest.mark.parametrize("src, decls, zero", ORACLE_CASES, ids=ORACLE_IDS)
def test_enumeration_completeness(src, decls, zero):
    problem = _problem(src, decls, zero)
    models = solve_enumerative(transpile_with_choices(problem))
    got = sorted(tuple(sorted(assignment_of(m, problem.decls).items())) for m in models)
    expected = sorted(tuple(sorted(a.items())) for a in brute_force(problem))
    assert got == expected


@pytest.mark.parametrize("src, decls, zero", ORACLE_CASES[:5], ids=ORACLE_IDS[:5])
def test_per_model_soundness(src, decls, zero):
    problem = _problem(src, decls, zero)
    program = transpile_with_choices(problem)
    positive = AspProgram(tuple(r for r in program if isinstance(r.head, Atom)))
    for m in solve_enumerative(program):
        chosen = [a for d in problem.decls for a in m.with_predicate(d.name)]
        facts = AspProgram(tuple(AspRule(Atom(a.predicate, a.args)) for a in chosen))
        expected = ground_positive(positive + facts).restrict("inter", "domain", "result")
        assert m.restrict("inter", "domain", "result") == expected
        if zero:
            assert "result(0)" in m


def test_require_zero_filters():
    problem = _problem("pred a", [("a", 0, 6)], True)
    models = solve_enumerative(transpile_with_choices(problem))
    assert models and all("result(0)" in m for m in models)


def test_export_round_trip(tmp_path):
    program = parse_program(CHOICE_SUM)
    path = export_for_external_solver(program, tmp_path / "out.lp")
    assert path.read_text() == emit(program)
    assert parse_program(path.read_text()) == program


def test_export_ifz_dispatch(tmp_path):
    program = translate(parse_expr(r"(\x. ifz x then succ else pred) 2 4"))
    path = export_for_external_solver(program, tmp_path / "l4.lp")
    assert parse_program(path.read_text()) == program


def test_export_empty(tmp_path):
    path = export_for_external_solver(AspProgram(()), tmp_path / "empty.lp")
    assert path.read_bytes() == b""


def test_choice_head_unbounded_upper_emits():
    head = ChoiceHead(0, None, Atom("q", (NumberTerm(1),)))
    assert str(AspRule(head)) == "0{q(1)}."
