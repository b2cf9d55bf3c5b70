"""Hand-rolled lexer and recursive-descent parser for both languages.

Surface syntax (ASCII, with Unicode aliases accepted on input)::

    formula  := iff
    iff      := imp ("<->" imp)*          right associative
    imp      := or ("->" imp)?            right associative
    or       := and ("|" and)*            left associative
    and      := unary ("&" unary)*        left associative
    unary    := ("~" | "[]" | "<>") unary | atom
    atom     := "eps" "(" name "," name ")"     (ontology mode)
              | ident                           (modal mode)
              | "(" formula ")"
    ident    := [a-z][a-z0-9_]*

Aliases: ``¬`` for ``~``, ``∧`` for ``&``, ``∨`` for ``|``, ``⊃``/``→``
for ``->``, ``≡``/``↔`` for ``<->``, ``□`` for ``[]``, ``◇`` for ``<>``,
``ε`` for ``eps``.  Sugar is expanded at parse time, so the resulting
AST uses only the stored core of :mod:`ontomodal.formulas`.
"""

from __future__ import annotations

from .formulas import (
    And,
    Box,
    Diamond,
    Epsilon,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Var,
)


class ParseError(ValueError):
    """Syntax or lexical error, with the 0-based input offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_ALIASES = {
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "⊃": "->",
    "→": "->",
    "≡": "<->",
    "↔": "<->",
    "□": "[]",
    "◇": "<>",
    "ε": "eps",
}

_IDENT_START = set("abcdefghijklmnopqrstuvwxyz")
_IDENT_CONT = _IDENT_START | set("0123456789_")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, position) triples; kind is the operator text
    itself for punctuation, or 'ident'."""
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _ALIASES:
            toks.append((_ALIASES[c], _ALIASES[c], i))
            i += 1
            continue
        if text.startswith("<->", i):
            toks.append(("<->", "<->", i))
            i += 3
            continue
        if text.startswith("->", i) or text.startswith("[]", i) or text.startswith("<>", i):
            op = text[i : i + 2]
            toks.append((op, op, i))
            i += 2
            continue
        if c in "~&|(),":
            toks.append((c, c, i))
            i += 1
            continue
        if c in _IDENT_START:
            j = i + 1
            while j < n and text[j] in _IDENT_CONT:
                j += 1
            toks.append(("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i)
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, mode: str):
        self.text = text
        self.mode = mode  # "l1" or "modal"
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.pos]

    def next(self) -> tuple[str, str, int]:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> tuple[str, str, int]:
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1] or 'end of input'!r}", t[2])
        return t

    def parse(self) -> Formula:
        f = self.iff()
        t = self.peek()
        if t[0] != "eof":
            raise ParseError(f"unexpected trailing input {t[1]!r}", t[2])
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek()[0] == "<->":
            self.next()
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek()[0] == "->":
            self.next()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "|":
            self.next()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[0] == "&":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, _, pos = self.peek()
        if kind == "~":
            self.next()
            return Not(self.unary())
        if kind == "[]":
            if self.mode == "l1":
                raise ParseError("modal operator in an ontology formula", pos)
            self.next()
            return Box(self.unary())
        if kind == "<>":
            if self.mode == "l1":
                raise ParseError("modal operator in an ontology formula", pos)
            self.next()
            return Diamond(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, pos = self.next()
        if kind == "(":
            f = self.iff()
            self.expect(")")
            return f
        if kind == "ident" and value == "eps":
            if self.mode == "modal":
                raise ParseError("copula atom in a modal formula", pos)
            self.expect("(")
            a = self.expect("ident")[1]
            self.expect(",")
            b = self.expect("ident")[1]
            self.expect(")")
            return Epsilon(a, b)
        if kind == "ident":
            if self.mode == "l1":
                raise ParseError(
                    f"bare variable {value!r}; ontology atoms are eps(name,name)", pos
                )
            return Var(value)
        raise ParseError(f"expected a formula, found {value or 'end of input'!r}", pos)


def parse_l1(text: str) -> Formula:
    """Parse an ontology formula (atoms ``eps(a,b)``, no modalities)."""
    return _Parser(text, "l1").parse()


def parse_modal(text: str) -> Formula:
    """Parse a modal formula; ``<>`` is stored expanded as ``~[]~``."""
    return _Parser(text, "modal").parse()
