"""A bundled corpus of closed PCF programs used for differential checking.

Each entry is ``(name, source)``; values are deliberately not stored here so
that the interpreter stays the only judge of what a program means.
"""

from __future__ import annotations

DOUBLE = r"fix (\double. \x. ifz x then 0 else succ (succ (double (pred x))))"
PLUS = r"fix (\plus. \a. \b. ifz a then b else plus (pred a) (succ b))"
EQUAL = (r"fix (\eq. \x. \y. ifz x then (ifz y then 0 else 1) "
         r"else (ifz y then 1 else eq (pred x) (pred y)))")
TIMES = rf"fix (\times. \a. \b. ifz a then 0 else ({PLUS}) b (times (pred a) b))"

NAMED = [
    ("numeral", "0"),
    ("numeral-big", "42"),
    ("succ", "succ 1"),
    ("pred", "pred 7"),
    ("succ-twice", r"(\x. succ (succ x)) (succ 0)"),
    ("ifz-dispatch", r"(\x. ifz x then succ else pred) 2 4"),
    ("ifz-dispatch-zero", r"(\x. ifz x then succ else pred) 0 4"),
    ("proof-tree", r"ifz (fix (\f. 4)) then 3 else (\x. pred x) 2"),
    ("identity", r"(\x. x) 9"),
    ("const", r"(\x. \y. x) 3 8"),
    ("second", r"(\x. \y. y) 3 8"),
    ("compose", r"(\f. \g. \x. f (g x)) succ succ 5"),
    ("twice", r"(\f. \x. f (f x)) (\y. succ (succ y)) 1"),
    ("shadow", r"(\x. (\x. succ x) 4) 1"),
    ("higher-order-arg", r"(\f. f (f 0)) succ"),
    ("ifz-then", "ifz 0 then 5 else 6"),
    ("ifz-else", "ifz 3 then 5 else 6"),
    ("ifz-nested", "ifz pred 1 then ifz 1 then 7 else 8 else 9"),
    ("ifz-function", r"(ifz 1 then pred else succ) 10"),
    ("let-style", r"(\sq. sq 3) (\n. ({}) n n)".format(TIMES)),
    ("fix-constant", r"fix (\f. 4)"),
    ("double-3", f"({DOUBLE}) 3"),
    ("plus-2-3", f"({PLUS}) 2 3"),
    ("equal-yes", f"({EQUAL}) 4 4"),
    ("equal-no", f"({EQUAL}) 4 2"),
    ("times-2-3", f"({TIMES}) 2 3"),
    ("countdown", r"(fix (\f. \n. ifz n then 0 else f (pred n))) 6"),
    ("sum-to", rf"(fix (\s. \n. ifz n then 0 else ({PLUS}) n (s (pred n)))) 4"),
    ("pred-chain", "pred (pred (pred 5))"),
    ("nested-scope", r"(\f. ifz f 1 then 0 else f 2) (\x. (\y. y) 7)"),
    ("shared-inner", r"(\f. f 1 (f 2 3)) (\x. \y. y)"),
    ("curried-three", r"(\a. \b. \c. ifz a then b else c) 0 11 12"),
    ("equal-plus", rf"(\eq. \plus. eq (plus 1 2) 3) ({EQUAL}) ({PLUS})"),
]

# a+b=c search problem with its natural-number variables
ABC = rf"(\eq. \plus. eq (plus a b) c) ({EQUAL}) (fix (\plus. \x. \y. ifz y then x else plus (succ x) (pred y)))"

# nested lambdas whose inner scope tuples shrink under pruning
PRUNING_BENCHMARKS = ["nested-scope", "shared-inner"]


def double_cases(upto: int = 8):
    return [(f"double-{n}", f"({DOUBLE}) {n}", n) for n in range(upto + 1)]


def plus_cases(upto: int = 6):
    return [(f"plus-{a}-{b}", f"({PLUS}) {a} {b}", (a, b))
            for a in range(upto + 1) for b in range(upto + 1)]


def corpus() -> list[tuple[str, str]]:
    """Every closed program of the corpus, named."""
    out = list(NAMED)
    out += [(name, src) for name, src, _ in double_cases()]
    out += [(name, src) for name, src, _ in plus_cases()]
    return out


def source(name: str) -> str:
    return dict(corpus())[name]
