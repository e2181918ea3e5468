"""Exception hierarchy shared by the toolchain."""

from __future__ import annotations


class PcfError(Exception):
    """Base class for every error raised by pcf2asp."""


class ParseError(PcfError):
    def __init__(self, message: str, span=None, line: int | None = None, column: int | None = None):
        self.message = message
        self.span = span
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}, column {column}"
        elif span is not None:
            where = f" at offset {span.start}"
        super().__init__(f"{message}{where}")


class UnboundVariable(PcfError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name!r}")
