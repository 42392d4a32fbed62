"""Regular-expression trees, their renderer, and a parser for the rendered syntax."""

from __future__ import annotations

from functools import reduce
from typing import NamedTuple, Sequence

from .core import EMP, FsmError

NULL_TEXT = "∅"
UNION_TEXT = "∪"


class EmptyRegexp(NamedTuple):
    """ε"""


class NullRegexp(NamedTuple):
    """∅, the empty language (needed for machines that accept nothing)."""


class SymbolRegexp(NamedTuple):
    symbol: str


class UnionRegexp(NamedTuple):
    left: object
    right: object


class ConcatRegexp(NamedTuple):
    left: object
    right: object


class KleenestarRegexp(NamedTuple):
    body: object


def empty_regexp() -> EmptyRegexp:
    return EmptyRegexp()


def null_regexp() -> NullRegexp:
    return NullRegexp()


def symbol_regexp(a: str) -> SymbolRegexp:
    if not isinstance(a, str) or not a or a == EMP:
        raise FsmError(f"bad regexp symbol {a!r}")
    return SymbolRegexp(a)


def union_regexp(r1, r2, *more) -> UnionRegexp:
    return reduce(UnionRegexp, more, UnionRegexp(r1, r2))


def concat_regexp(r1, r2, *more) -> ConcatRegexp:
    return reduce(ConcatRegexp, more, ConcatRegexp(r1, r2))


def kleenestar_regexp(r) -> KleenestarRegexp:
    return KleenestarRegexp(r)


def regexp_symbols(r) -> list:
    """Symbols used by ``r`` in left-to-right order, without repeats."""
    out = {}

    def walk(node):
        if isinstance(node, SymbolRegexp):
            out.setdefault(node.symbol)
        elif isinstance(node, (UnionRegexp, ConcatRegexp)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, KleenestarRegexp):
            walk(node.body)

    walk(r)
    return list(out)


def printable_regexp(r) -> str:
    if isinstance(r, EmptyRegexp):
        return EMP
    if isinstance(r, NullRegexp):
        return NULL_TEXT
    if isinstance(r, SymbolRegexp):
        return r.symbol
    if isinstance(r, UnionRegexp):
        return f"({printable_regexp(r.left)} {UNION_TEXT} {printable_regexp(r.right)})"
    if isinstance(r, ConcatRegexp):
        return printable_regexp(r.left) + printable_regexp(r.right)
    if isinstance(r, KleenestarRegexp):
        body = printable_regexp(r.body)
        if isinstance(r.body, ConcatRegexp):
            body = f"({body})"
        return body + "*"
    raise FsmError(f"not a regular expression: {r!r}")


def parse_regexp(text: str, sigma: Sequence[str]):
    """Parse rendered syntax back into a tree.

    Symbols are matched greedily (longest first) against ``sigma``, so
    multi-character symbols need no separators. ``U`` is accepted for ``∪``
    and ``@`` for ``ε`` unless they are alphabet symbols. Whitespace is
    ignored. Unions and concatenations fold to the left.
    """
    return _RegexpParser(text, sigma).parse()


class _RegexpParser:
    def __init__(self, text, sigma):
        self.text = text
        self.pos = 0
        self.symbols = sorted(set(sigma), key=len, reverse=True)
        self.union_tokens = [UNION_TEXT] + (["U"] if "U" not in sigma else [])
        self.empty_tokens = [EMP] + (["@"] if "@" not in sigma else [])

    def error(self, msg):
        return FsmError(f"regexp syntax error at column {self.pos + 1}: {msg}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek_any(self, options):
        self.skip()
        for tok in options:
            if self.text.startswith(tok, self.pos):
                return tok
        return None

    def parse(self):
        node = self.union()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return node

    def union(self):
        node = self.concat()
        while (tok := self.peek_any(self.union_tokens)) is not None:
            self.pos += len(tok)
            node = UnionRegexp(node, self.concat())
        return node

    def concat(self):
        parts = []
        while True:
            part = self.postfix()
            if part is None:
                break
            parts.append(part)
        if not parts:
            raise self.error("expected a regular expression")
        return reduce(ConcatRegexp, parts)

    def postfix(self):
        node = self.atom()
        if node is None:
            return None
        while self.peek_any(["*"]):
            self.pos += 1
            node = KleenestarRegexp(node)
        return node

    def atom(self):
        self.skip()
        if self.pos >= len(self.text):
            return None
        if self.text.startswith("(", self.pos):
            self.pos += 1
            node = self.union()
            if not self.peek_any([")"]):
                raise self.error("missing ')'")
            self.pos += 1
            return node
        for sym in self.symbols:
            if self.text.startswith(sym, self.pos):
                self.pos += len(sym)
                return SymbolRegexp(sym)
        if (tok := self.peek_any(self.empty_tokens)) is not None:
            self.pos += len(tok)
            return EmptyRegexp()
        if self.peek_any([NULL_TEXT]):
            self.pos += len(NULL_TEXT)
            return NullRegexp()
        return None
