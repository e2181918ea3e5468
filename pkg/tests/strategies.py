"""Hypothesis strategies for PCF expressions and ASP programs."""

from hypothesis import strategies as st

from pcf2asp.asp import (
    ArithTerm,
    AspProgram,
    AspRule,
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
from pcf2asp.syntax import App, Fix, Ifz, Lam, Num, Pred, Succ, Var

IDENTS = ["x", "y", "f", "g", "acc", "n1", "x_", "thenx", "fixed", "lambdas"]

identifiers = st.sampled_from(IDENTS)

pcf_leaves = st.one_of(
    identifiers.map(Var),
    st.integers(0, 10**6).map(Num),
    st.sampled_from([Succ(), Pred(), Fix()]),
)


def _pcf_nodes(children):
    return st.one_of(
        st.builds(App, children, children),
        st.builds(Lam, identifiers, children),
        st.builds(Ifz, children, children, children),
    )


pcf_exprs = st.recursive(pcf_leaves, _pcf_nodes, max_leaves=25)


# ---------------------------------------------------------------- ASP

const_names = st.sampled_from(["a", "l0", "ite3", "succ", "f", "foo_Bar", "p"])
var_names = st.sampled_from(["X", "Y", "X0", "FIX", "A", "Long_name"])
pred_names = st.sampled_from(["inter", "domain", "result", "p", "q", "r2"])

asp_numbers = st.integers(-50, 10**9).map(NumberTerm)
asp_vars = var_names.map(VariableTerm)


def _asp_nodes(children):
    return st.one_of(
        st.builds(lambda n, xs: ConstTerm(n, tuple(xs)), const_names, st.lists(children, min_size=1, max_size=3)),
        st.lists(children, max_size=3).map(lambda xs: TupleTerm(tuple(xs))),
        st.builds(ArithTerm, st.sampled_from(["+", "-"]), children, children),
    )


asp_terms = st.recursive(
    st.one_of(asp_numbers, asp_vars, const_names.map(ConstTerm)),
    _asp_nodes,
    max_leaves=8,
)

asp_atoms = st.builds(lambda p, xs: Atom(p, tuple(xs)), pred_names, st.lists(asp_terms, max_size=3))
asp_comparisons = st.builds(Comparison, st.sampled_from(["<", ">", "=", "!="]), asp_terms, asp_terms)
asp_body_literals = st.one_of(
    asp_atoms,
    asp_atoms.map(lambda a: NegAtom(a.predicate, a.args)),
    asp_comparisons,
)
asp_ranges = st.builds(
    RangeCondition, asp_vars, st.integers(0, 20).map(NumberTerm), st.integers(0, 20).map(NumberTerm)
)


@st.composite
def choice_heads(draw):
    lower = draw(st.integers(0, 3))
    upper = draw(st.one_of(st.none(), st.integers(lower, lower + 3)))
    template = draw(asp_atoms)
    condition = draw(st.lists(st.one_of(asp_atoms, asp_comparisons, asp_ranges), max_size=2))
    return ChoiceHead(lower, upper, template, tuple(condition))


@st.composite
def asp_rules(draw):
    kind = draw(st.sampled_from(["fact", "rule", "constraint", "choice"]))
    body = tuple(draw(st.lists(asp_body_literals, max_size=4)))
    if kind == "fact":
        return AspRule(draw(asp_atoms))
    if kind == "rule":
        return AspRule(draw(asp_atoms), body)
    if kind == "constraint":
        return AspRule(None, body or (draw(asp_atoms),))
    return AspRule(draw(choice_heads()), body)


asp_programs = st.lists(asp_rules(), max_size=6).map(lambda rs: AspProgram(tuple(rs)))
