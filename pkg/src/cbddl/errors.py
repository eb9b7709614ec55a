"""Exception hierarchy shared by every cbddl module."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class Span:
    """1-based line/column of a token in a source file."""

    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


class CbddlError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class LexError(CbddlError):
    def __init__(self, message: str, span: Span, token: str = ""):
        self.message = message
        self.span = span
        self.token = token
        super().__init__(f"{span}: {message}")


class ParseError(CbddlError):
    def __init__(self, message: str, span: Span | None, token: str = ""):
        self.message = message
        self.span = span
        self.token = token
        where = f"{span}: " if span is not None else ""
        super().__init__(f"{where}{message}")


class SceneError(CbddlError):
    pass


class UnknownName(CbddlError):
    pass


class ArityMismatch(CbddlError):
    pass


class MixedTermError(CbddlError):
    pass


class NotEnoughSlots(CbddlError):
    pass
