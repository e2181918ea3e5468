"""Parser for the ASP subset the toolchain reads and writes.

Accepts everything :func:`pcf2asp.asp.emit.emit` produces plus ``%`` line
comments, ranges ``X = 1..10`` (in bodies and choice conditions) and ``<>``
as a synonym for ``!=``.

A parenthesised single term ``(t)`` is a 1-tuple, except when ``t`` is a
number or an arithmetic expression, where the parentheses only group;
``(t,)`` is always a 1-tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from .terms import (
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

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>%[^\n]*)
    | (?P<num>[0-9]+)
    | (?P<const>[a-z][A-Za-z0-9_]*)
    | (?P<var>[A-Z][A-Za-z0-9_]*)
    | (?P<op>:-|\.\.|!=|<>|[(),.:{}=<>+\-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            value = m.group()
            if kind == "op":
                kind = value
            elif kind == "const" and value == "not":
                kind = "not"
            out.append(_Tok(kind, value, pos))
        pos = m.end()
    out.append(_Tok("eof", "", len(text)))
    return out


def _error(text: str, offset: int, message: str) -> ParseError:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return ParseError(message, line=line, column=column)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def advance(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str):
        raise _error(self.text, self.tok.offset, message)

    def expect(self, kind: str) -> _Tok:
        if self.tok.kind != kind:
            self.fail(f"expected {kind!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    # program ::= rule*
    def program(self) -> AspProgram:
        rules = []
        while self.tok.kind != "eof":
            rules.append(self.rule())
        return AspProgram(tuple(rules))

    def rule(self) -> AspRule:
        if self.tok.kind == ":-":
            self.advance()
            body = self.body()
            self.expect(".")
            return AspRule(None, body)
        head = self.head()
        body = ()
        if self.tok.kind == ":-":
            self.advance()
            body = self.body()
        self.expect(".")
        return AspRule(head, body)

    def head(self):
        if self.tok.kind == "{" or (self.tok.kind == "num" and self.peek().kind == "{"):
            return self.choice()
        lit = self.literal()
        if not isinstance(lit, Atom):
            self.fail("rule head must be an atom or a choice")
        return lit

    def choice(self) -> ChoiceHead:
        lower = 0
        if self.tok.kind == "num":
            lower = int(self.advance().text)
        self.expect("{")
        template = self.literal()
        if not isinstance(template, Atom):
            self.fail("choice element must be an atom")
        condition = ()
        if self.tok.kind == ":":
            self.advance()
            condition = self.body()
        self.expect("}")
        upper = None
        if self.tok.kind == "num":
            upper = int(self.advance().text)
        try:
            return ChoiceHead(lower, upper, template, condition)
        except ValueError as exc:
            self.fail(str(exc))

    def body(self) -> tuple:
        lits = [self.literal()]
        while self.tok.kind == ",":
            self.advance()
            lits.append(self.literal())
        return tuple(lits)

    def literal(self):
        if self.tok.kind == "not":
            self.advance()
            lit = self.literal()
            if not isinstance(lit, Atom):
                self.fail("only atoms can be negated")
            return NegAtom(lit.predicate, lit.args)
        left = self.term()
        kind = self.tok.kind
        if kind in ("=", "!=", "<>", "<", ">"):
            self.advance()
            right = self.term()
            if kind == "=" and self.tok.kind == "..":
                self.advance()
                return RangeCondition(left, right, self.term())
            return Comparison("!=" if kind == "<>" else kind, left, right)
        if isinstance(left, ConstTerm):
            return Atom(left.name, left.args)
        self.fail(f"expected an atom or comparison, found term {left}")

    def term(self):
        left = self.primary()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            left = ArithTerm(op, left, self.primary())
        return left

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return NumberTerm(int(tok.text))
        if tok.kind == "-" and self.peek().kind == "num":
            self.advance()
            return NumberTerm(-int(self.advance().text))
        if tok.kind == "var":
            self.advance()
            return VariableTerm(tok.text)
        if tok.kind == "const":
            self.advance()
            args = ()
            if self.tok.kind == "(":
                self.advance()
                args = self.terms(")")
                self.expect(")")
                if not args:
                    self.fail("function terms need at least one argument")
            return ConstTerm(tok.text, args)
        if tok.kind == "(":
            self.advance()
            if self.tok.kind == ")":
                self.advance()
                return TupleTerm(())
            first = self.term()
            if self.tok.kind == ")":
                self.advance()
                if isinstance(first, (NumberTerm, ArithTerm)):
                    return first
                return TupleTerm((first,))
            items = [first]
            while self.tok.kind == ",":
                self.advance()
                if self.tok.kind == ")":
                    break
                items.append(self.term())
            self.expect(")")
            return TupleTerm(tuple(items))
        self.fail(f"expected a term, found {tok.text or 'end of input'!r}")

    def terms(self, closer: str) -> tuple:
        if self.tok.kind == closer:
            return ()
        items = [self.term()]
        while self.tok.kind == ",":
            self.advance()
            items.append(self.term())
        return tuple(items)


def parse_program(text: str) -> AspProgram:
    return _Parser(text).program()


def parse_term(text: str):
    parser = _Parser(text)
    t = parser.term()
    parser.expect("eof")
    return t


def parse_rule(text: str) -> AspRule:
    parser = _Parser(text)
    rule = parser.rule()
    parser.expect("eof")
    return rule


def parse_atom(text: str) -> Atom:
    parser = _Parser(text)
    lit = parser.literal()
    parser.expect("eof")
    if not isinstance(lit, Atom):
        raise ParseError(f"{text!r} is not an atom")
    return lit
