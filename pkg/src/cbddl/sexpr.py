"""Tokenizer and s-expression reader with source spans.

Numbers are decimal only (optional sign, optional fraction). Integers
without a fraction are returned as ``int`` so that step counts and part
indices survive a print/parse cycle unchanged.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import LexError, Span

# token kinds
LPAREN = "("
RPAREN = ")"
SYMBOL = "SYMBOL"
KEYWORD = "KEYWORD"
NUMBER = "NUMBER"
STRING = "STRING"

_NUMBER_RE = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)")
_SYMBOL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_\-.]*")
_KEYWORD_RE = re.compile(r":[A-Za-z_][A-Za-z0-9_\-]*")
_DELIMS = set(" \t\r\n();\"")


@dataclass(frozen=True)
class Token:
    kind: str
    value: Union[str, int, float]
    span: Span
    text: str


def _bad_token(text: str, i: int) -> str:
    j = i
    while j < len(text) and text[j] not in _DELIMS:
        j += 1
    return text[i : max(j, i + 1)]


def tokenize(text: str) -> Iterator[Token]:
    """Yield tokens; ``;`` starts a comment running to end of line."""
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r﻿":
            i, col = i + 1, col + 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        span = Span(line, col)
        if ch in "()":
            yield Token(ch, ch, span, ch)
            i, col = i + 1, col + 1
            continue
        if ch == '"':
            j = i + 1
            out = []
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise LexError("unterminated string", span, text[i:j])
                if text[j] == "\\" and j + 1 < n:
                    out.append(text[j + 1])
                    j += 2
                    continue
                out.append(text[j])
                j += 1
            if j >= n:
                raise LexError("unterminated string", span, text[i:j])
            yield Token(STRING, "".join(out), span, text[i : j + 1])
            col += j + 1 - i
            i = j + 1
            continue

        for kind, rx in ((NUMBER, _NUMBER_RE), (KEYWORD, _KEYWORD_RE), (SYMBOL, _SYMBOL_RE)):
            m = rx.match(text, i)
            if m and (m.end() == n or text[m.end()] in _DELIMS):
                raw = m.group(0)
                if kind == NUMBER:
                    value: Union[str, int, float] = float(raw) if "." in raw else int(raw)
                else:
                    value = raw
                yield Token(kind, value, span, raw)
                col += m.end() - i
                i = m.end()
                break
        else:
            bad = _bad_token(text, i)
            raise LexError(f"bad token {bad!r}", span, bad)


@dataclass
class SList:
    items: list = field(default_factory=list)
    span: Span = Span(0, 0)

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom) and self.items[0].kind in (SYMBOL, KEYWORD):
            return self.items[0].value  # type: ignore[return-value]
        return None


@dataclass
class Atom:
    kind: str
    value: Union[str, int, float]
    span: Span
    text: str


SExpr = Union[SList, Atom]


def read_all(text: str) -> list[SExpr]:
    """Read every top-level form in ``text``."""
    stack: list[SList] = []
    forms: list[SExpr] = []
    for tok in tokenize(text):
        if tok.kind == LPAREN:
            stack.append(SList([], tok.span))
        elif tok.kind == RPAREN:
            if not stack:
                raise LexError("unbalanced ')'", tok.span, ")")
            done = stack.pop()
            (stack[-1].items if stack else forms).append(done)
        else:
            atom = Atom(tok.kind, tok.value, tok.span, tok.text)
            (stack[-1].items if stack else forms).append(atom)
    if stack:
        raise LexError("unbalanced '(': missing ')'", stack[-1].span, "(")
    return forms
