"""PCF abstract syntax, parser and pretty-printer.

Surface syntax::

    e ::= x | e e | \\x. e | lambda x. e | n | succ | pred | fix
        | ifz e then e else e | ( e )

Application is left associative and binds tighter than a lambda body or an
``ifz`` branch, both of which extend as far to the right as possible.
``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

KEYWORDS = frozenset({"lambda", "succ", "pred", "fix", "ifz", "then", "else"})
MAX_NUMERAL = 2**64 - 1


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")


class Expr:
    """Base class of PCF expressions."""

    __slots__ = ()

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True, repr=False)
class Var(Expr):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class App(Expr):
    fn: Expr
    arg: Expr

    def __repr__(self):
        return f"App({self.fn!r}, {self.arg!r})"


@dataclass(frozen=True, repr=False)
class Lam(Expr):
    param: str
    body: Expr

    def __repr__(self):
        return f"Lam({self.param!r}, {self.body!r})"


@dataclass(frozen=True, repr=False)
class Num(Expr):
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("PCF numerals are natural numbers")

    def __repr__(self):
        return f"Num({self.value})"


@dataclass(frozen=True, repr=False)
class Succ(Expr):
    def __repr__(self):
        return "Succ()"


@dataclass(frozen=True, repr=False)
class Pred(Expr):
    def __repr__(self):
        return "Pred()"


@dataclass(frozen=True, repr=False)
class Fix(Expr):
    def __repr__(self):
        return "Fix()"


@dataclass(frozen=True, repr=False)
class Ifz(Expr):
    cond: Expr
    then: Expr
    orelse: Expr

    def __repr__(self):
        return f"Ifz({self.cond!r}, {self.then!r}, {self.orelse!r})"


BUILTINS = {"succ": Succ(), "pred": Pred(), "fix": Fix()}


# ---------------------------------------------------------------- lexing

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<num>[0-9]+)
    | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<lam>\\|λ)
    | (?P<punct>[().])
    | (?P<minus>-)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'kw', 'lam', '(', ')', '.', 'eof'
    text: str
    span: SourceSpan


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _span(text: str, start: int, end: int) -> SourceSpan:
    return SourceSpan(_byte_offset(text, start), _byte_offset(text, end))


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _span(text, pos, pos + 1))
        kind = m.lastgroup
        span = _span(text, m.start(), m.end())
        value = m.group()
        if kind == "minus":
            if re.match(r"-[0-9]", text[pos:pos + 2]):
                raise ParseError("negative numerals are not allowed", span)
            raise ParseError("unexpected character '-'", span)
        if kind == "num":
            if int(value) > MAX_NUMERAL:
                raise ParseError(f"numeral {value} exceeds {MAX_NUMERAL}", span)
            tokens.append(Token("num", value, span))
        elif kind == "ident":
            if value == "lambda":
                tokens.append(Token("lam", value, span))
            elif value in KEYWORDS:
                tokens.append(Token("kw", value, span))
            else:
                tokens.append(Token("ident", value, span))
        elif kind == "lam":
            tokens.append(Token("lam", value, span))
        elif kind == "punct":
            tokens.append(Token(value, value, span))
        pos = m.end()
    end = _byte_offset(text, len(text))
    tokens.append(Token("eof", "", SourceSpan(end, end)))
    return tokens


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = text or kind
            found = tok.text or "end of input"
            raise ParseError(f"expected {wanted!r}, found {found!r}", tok.span)
        return self.advance()

    def starts_atom(self) -> bool:
        tok = self.tok
        return tok.kind in ("ident", "num", "(") or (
            tok.kind == "kw" and tok.text in BUILTINS
        )

    def starts_tail(self) -> bool:
        return self.tok.kind == "lam" or (self.tok.kind == "kw" and self.tok.text == "ifz")

    def expr(self) -> Expr:
        if self.starts_tail():
            return self.tail()
        if not self.starts_atom():
            tok = self.tok
            if tok.kind == "kw":
                raise ParseError(f"reserved word {tok.text!r} cannot start an expression", tok.span)
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.span)
        result = self.atom()
        while True:
            if self.starts_atom():
                result = App(result, self.atom())
            elif self.starts_tail():
                # a trailing lambda or ifz swallows the rest of the input
                return App(result, self.tail())
            else:
                return result

    def tail(self) -> Expr:
        tok = self.advance()
        if tok.kind == "lam":
            name = self.tok
            if name.kind == "kw" or name.kind == "lam":
                raise ParseError(f"reserved word {name.text!r} used as identifier", name.span)
            param = self.expect("ident").text
            self.expect(".")
            return Lam(param, self.expr())
        cond = self.expr()
        self.expect("kw", "then")
        then = self.expr()
        self.expect("kw", "else")
        return Ifz(cond, then, self.expr())

    def atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "ident":
            return Var(tok.text)
        if tok.kind == "num":
            return Num(int(tok.text))
        if tok.kind == "kw":
            return BUILTINS[tok.text]
        inner = self.expr()
        self.expect(")")
        return inner


def parse_expr(text: str) -> Expr:
    """Parse PCF source text into an expression tree.

    Raises ParseError (carrying a byte-offset SourceSpan) on malformed
    input, reserved words used as identifiers and negative numerals.
    """
    parser = _Parser(text)
    result = parser.expr()
    if parser.tok.kind != "eof":
        raise ParseError(f"unexpected {parser.tok.text!r}", parser.tok.span)
    return result


# ---------------------------------------------------------------- printing

def pretty(e: Expr) -> str:
    """Render ``e`` in surface syntax that parses back to ``e``."""
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Succ):
        return "succ"
    if isinstance(e, Pred):
        return "pred"
    if isinstance(e, Fix):
        return "fix"
    if isinstance(e, Lam):
        return f"\\{e.param}. {pretty(e.body)}"
    if isinstance(e, Ifz):
        return f"ifz {pretty(e.cond)} then {pretty(e.then)} else {pretty(e.orelse)}"
    if isinstance(e, App):
        fn = pretty(e.fn)
        if isinstance(e.fn, (Lam, Ifz)):
            fn = f"({fn})"
        arg = pretty(e.arg)
        if isinstance(e.arg, (Lam, Ifz, App)):
            arg = f"({arg})"
        return f"{fn} {arg}"
    raise TypeError(f"not a PCF expression: {e!r}")


def free_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset([e.name])
    if isinstance(e, App):
        return free_vars(e.fn) | free_vars(e.arg)
    if isinstance(e, Lam):
        return free_vars(e.body) - {e.param}
    if isinstance(e, Ifz):
        return free_vars(e.cond) | free_vars(e.then) | free_vars(e.orelse)
    return frozenset()


def apply_all(fn: Expr, *args: Expr) -> Expr:
    for arg in args:
        fn = App(fn, arg)
    return fn
