import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcf2asp.errors import ParseError
from pcf2asp.syntax import (
    App,
    Fix,
    Ifz,
    Lam,
    Num,
    Pred,
    SourceSpan,
    Succ,
    Var,
    free_vars,
    parse_expr,
    pretty,
)

from strategies import identifiers, pcf_exprs


def test_application_is_left_associative():
    assert parse_expr("f a b") == App(App(Var("f"), Var("a")), Var("b"))


def test_succ_twice_parses():
    e = parse_expr(r"(\x. succ (succ x)) (succ 0)")
    assert e == App(Lam("x", App(Succ(), App(Succ(), Var("x")))), App(Succ(), Num(0)))


def test_numeral():
    assert parse_expr("0") == Num(0)


@pytest.mark.parametrize("text", [r"\x. x", "lambda x. x", "λx. x", "λ x . x"])
def test_lambda_spellings(text):
    assert parse_expr(text) == Lam("x", Var("x"))


def test_lambda_body_extends_right():
    assert parse_expr(r"\x. f x y") == Lam("x", App(App(Var("f"), Var("x")), Var("y")))


def test_ifz_branches_extend_right():
    e = parse_expr("ifz x then 1 else f 2 3")
    assert e == Ifz(Var("x"), Num(1), App(App(Var("f"), Num(2)), Num(3)))


def test_trailing_lambda_is_last_argument():
    assert parse_expr(r"f \x. x") == App(Var("f"), Lam("x", Var("x")))


def test_comments_and_whitespace():
    assert parse_expr("# header\n  succ # trailing\n 0\n") == App(Succ(), Num(0))


@pytest.mark.parametrize("text", [
    "", "(", "f )", r"\succ. 0", r"\x x", "ifz 0 then 1", "-1", "then", "18446744073709551616", "a $ b",
])
def test_malformed_input_raises(text):
    with pytest.raises(ParseError):
        parse_expr(text)


def test_parse_error_carries_span():
    with pytest.raises(ParseError) as info:
        parse_expr("succ (0")
    assert isinstance(info.value.span, SourceSpan)
    assert info.value.span.start <= info.value.span.end


def test_negative_numeral_message():
    with pytest.raises(ParseError, match="negative"):
        parse_expr("succ -3")


def test_largest_numeral_accepted():
    assert parse_expr("18446744073709551615") == Num(2**64 - 1)


def test_pretty_examples():
    assert pretty(Num(3)) == "3"
    assert pretty(App(Succ(), Num(0))) == "succ 0"
    assert pretty(Lam("x", Var("x"))) == r"\x. x"


def test_free_vars_examples():
    assert free_vars(Var("a")) == {"a"}
    assert free_vars(Lam("x", Var("x"))) == set()
    assert free_vars(App(Succ(), Var("a"))) == {"a"}
    assert free_vars(parse_expr(r"\x. ifz y then x else fix z")) == {"y", "z"}


def test_builtins_are_not_variables():
    assert free_vars(parse_expr("succ (pred (fix 0))")) == set()
    assert parse_expr("fix") == Fix()
    assert parse_expr("pred") == Pred()


def test_num_rejects_negative():
    with pytest.raises(ValueError):
        Num(-1)


@settings(max_examples=1000, deadline=None)
@given(pcf_exprs)
def test_parse_pretty_round_trip(e):
    assert parse_expr(pretty(e)) == e


@settings(max_examples=200, deadline=None)
@given(st.lists(identifiers, min_size=2, max_size=8))
def test_juxtaposition_is_left_leaning(names):
    e = parse_expr(" ".join(names))
    for name in reversed(names[1:]):
        assert isinstance(e, App) and e.arg == Var(name)
        e = e.fn
    assert e == Var(names[0])
