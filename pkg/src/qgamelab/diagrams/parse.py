"""Tokenizer and recursive-descent parser for the diagram language.

Grammar (whitespace-insensitive, ``#`` comments to end of line):

    diagram := par (";" par)*          ";" sequences, first applied first
    par     := atom ("*" atom)*        "*" tensors
    atom    := "id" "(" nat ")"
             | "spider" "(" nat "," nat ("," phase)? ")"
             | "cup" | "cap" | "swap"
             | "box" "(" ident ")" | "ket" "(" digits ")"
             | "(" diagram ")"
    phase   := ["-"] (real ["pi"] | "pi")     in radians
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..errors import DiagramSyntaxError
from .observables import PhaseElement
from .terms import (
    Box,
    Cap,
    Cup,
    DiagramTerm,
    Id,
    Ket,
    Par,
    Seq,
    Spider,
    Swap,
)

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<punct>[();,*-])
""", re.VERBOSE)

_ATOM_STARTERS = ("id", "spider", "cup", "cap", "swap", "box", "ket", "(")


@dataclass(frozen=True)
class Token:
    kind: str       # "number" | "ident" | "punct" | "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise DiagramSyntaxError(
                f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "newline":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(lexeme)
        else:
            tokens.append(Token(kind, lexeme, line, col))
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected: tuple[str, ...]) -> DiagramSyntaxError:
        tok = self.peek()
        got = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DiagramSyntaxError(
            f"unexpected {got}, expected one of: "
            f"{', '.join(sorted(expected))}",
            tok.line, tok.column, expected)

    def expect_punct(self, text: str) -> Token:
        tok = self.peek()
        if tok.kind != "punct" or tok.text != text:
            self.fail((text,))
        return self.advance()

    def at_punct(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "punct" and tok.text == text

    def parse_diagram(self) -> DiagramTerm:
        stages = [self.parse_par()]
        while self.at_punct(";"):
            self.advance()
            stages.append(self.parse_par())
        return stages[0] if len(stages) == 1 else Seq(tuple(stages))

    def parse_par(self) -> DiagramTerm:
        factors = [self.parse_atom()]
        while self.at_punct("*"):
            self.advance()
            factors.append(self.parse_atom())
        return factors[0] if len(factors) == 1 else Par(tuple(factors))

    def parse_atom(self) -> DiagramTerm:
        tok = self.peek()
        if self.at_punct("("):
            self.advance()
            inner = self.parse_diagram()
            self.expect_punct(")")
            return inner
        if tok.kind != "ident":
            self.fail(_ATOM_STARTERS)
        if tok.text == "id":
            self.advance()
            self.expect_punct("(")
            wires = self.parse_nat()
            self.expect_punct(")")
            return Id(wires)
        if tok.text == "spider":
            self.advance()
            self.expect_punct("(")
            inputs = self.parse_nat()
            self.expect_punct(",")
            outputs = self.parse_nat()
            phase = None
            if self.at_punct(","):
                self.advance()
                phase = PhaseElement.qubit(self.parse_phase())
            self.expect_punct(")")
            return Spider(inputs, outputs, phase)
        if tok.text == "cup":
            self.advance()
            return Cup()
        if tok.text == "cap":
            self.advance()
            return Cap()
        if tok.text == "swap":
            self.advance()
            return Swap()
        if tok.text == "box":
            self.advance()
            self.expect_punct("(")
            name = self.peek()
            if name.kind != "ident":
                self.fail(("box name",))
            self.advance()
            self.expect_punct(")")
            return Box(name.text)
        if tok.text == "ket":
            self.advance()
            self.expect_punct("(")
            digits = self.peek()
            if digits.kind != "number" or not digits.text.isdigit():
                self.fail(("digit string",))
            self.advance()
            self.expect_punct(")")
            return Ket(digits.text)
        self.fail(_ATOM_STARTERS)

    def parse_nat(self) -> int:
        tok = self.peek()
        if tok.kind != "number" or not tok.text.isdigit():
            self.fail(("natural number",))
        self.advance()
        return int(tok.text)

    def parse_phase(self) -> float:
        sign = 1.0
        if self.at_punct("-"):
            self.advance()
            sign = -1.0
        tok = self.peek()
        if tok.kind == "ident" and tok.text == "pi":
            self.advance()
            return sign * math.pi
        if tok.kind == "number":
            self.advance()
            value = float(tok.text)
            nxt = self.peek()
            if nxt.kind == "ident" and nxt.text == "pi":
                self.advance()
                value *= math.pi
            return sign * value
        self.fail(("real number", "pi"))


def parse(text: str) -> DiagramTerm:
    """Parse diagram source text into an AST.

    Raises DiagramSyntaxError with line/column and the expected tokens.
    """
    parser = _Parser(_tokenize(text))
    term = parser.parse_diagram()
    if parser.peek().kind != "eof":
        parser.fail((";", "*", "end of input"))
    return term
