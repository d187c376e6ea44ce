"""Tokenizer and recursive-descent parser for the algebra expression language.

Grammar::

    expr     := quotient | family | "R"
              | "tensor(" expr "," expr ")" | "product(" expr "," expr ")"
    quotient := "R[" ident ("," ident)* "]/<" poly ("," poly)* ">"
    family   := ("H" | "C" | "G" | "Xi" | "CC") "(" nat ")"
    poly     := ["+"|"-"] term (("+"|"-") term)*
    term     := factor (["*"] factor | "/" number)*
    factor   := atom ["^" nat]
    atom     := number ["/" number] | ident | "(" poly ")"

Whitespace is ignored.  The same ``poly`` rule parses element literals
("1+j", "a+b*j+c*j^2") and polynomials over an algebra ("(1+j)*z^2 + j").
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DSLSyntaxError, UnknownGenerator
from .formal import FormalPoly

__all__ = [
    "Token",
    "tokenize",
    "Quotient",
    "FamilyNode",
    "TensorNode",
    "ProductNode",
    "RealsNode",
    "parse_expr",
    "parse_poly",
    "FAMILY_NAMES",
]

FAMILY_NAMES = ("H", "C", "G", "Xi", "CC")

@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        j = i
        if ch.isdigit():
            while j < n and text[j].isdigit():
                j += 1
            kind = "num"
        elif ch.isalpha() or ch == "_":
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            kind = "ident"
        else:
            j = i + 1
            kind = "op"
        tokens.append(Token(kind, text[i:j], line, col))
        col += j - i
        i = j
    tokens.append(Token("end", "", line, col))
    return tokens


@dataclass(frozen=True)
class Quotient:
    generators: tuple
    relations: tuple  # FormalPoly over generators
    text: str = ""


@dataclass(frozen=True)
class FamilyNode:
    name: str
    n: int


@dataclass(frozen=True)
class TensorNode:
    left: object
    right: object


@dataclass(frozen=True)
class ProductNode:
    left: object
    right: object


@dataclass(frozen=True)
class RealsNode:
    pass


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, msg: str, tok: Token | None = None, cls=DSLSyntaxError):
        tok = tok or self.tok
        raise cls(msg, tok.line, tok.column)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "ident") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.advance()

    def expect_end(self):
        if self.tok.kind != "end":
            self.error(f"unexpected {self.tok.text!r}")

    def nat(self) -> int:
        if self.tok.kind != "num":
            self.error("expected a natural number")
        return int(self.advance().text)

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.error("expected an identifier")
        return self.advance().text

    # algebra expressions
    def expr(self):
        t = self.tok
        if t.kind != "ident":
            self.error("expected an algebra expression")
        if t.text in ("tensor", "product"):
            self.advance()
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(")")
            return TensorNode(left, right) if t.text == "tensor" else ProductNode(left, right)
        if t.text in FAMILY_NAMES:
            self.advance()
            self.expect("(")
            num_tok = self.tok
            n = self.nat()
            if n < 1:
                self.error("family index must be a positive integer", num_tok)
            self.expect(")")
            return FamilyNode(t.text, n)
        if t.text == "R":
            self.advance()
            if not self.at("["):
                return RealsNode()
            return self.quotient(t)
        self.error(f"unknown algebra constructor {t.text!r}")

    def quotient(self, start: Token):
        self.expect("[")
        gens = [self.ident()]
        while self.at(","):
            self.advance()
            gens.append(self.ident())
        if len(set(gens)) != len(gens):
            self.error("duplicate generator names")
        self.expect("]")
        self.expect("/")
        self.expect("<")
        rels = [self.poly(gens)]
        while self.at(","):
            self.advance()
            rels.append(self.poly(gens))
        self.expect(">")
        return Quotient(tuple(gens), tuple(rels))

    # polynomials
    def poly(self, gens: list[str], allow_new: bool = False) -> FormalPoly:
        self._gens = gens
        self._allow_new = allow_new
        return self._sum()

    def _lift(self, p: FormalPoly) -> FormalPoly:
        if p.gens != tuple(self._gens):
            p = p.embed(self._gens)
        return p

    def _sum(self) -> FormalPoly:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
        acc = self._term() * sign
        while self.at("+") or self.at("-"):
            s = -1 if self.advance().text == "-" else 1
            t = self._term()
            acc = self._lift(acc) + self._lift(t) * s
        return self._lift(acc)

    def _starts_atom(self) -> bool:
        return self.tok.kind in ("num", "ident") or self.at("(")

    def _term(self) -> FormalPoly:
        acc = self._factor()
        while True:
            if self.at("*"):
                self.advance()
                f = self._factor()
            elif self.at("/"):
                self.advance()
                d = self._number()
                if d == 0:
                    self.error("division by zero")
                acc = self._lift(acc) * (1 / d)
                continue
            elif self._starts_atom():
                f = self._factor()
            else:
                break
            acc = self._lift(acc) * self._lift(f)
        return self._lift(acc)

    def _number(self) -> Fraction:
        if self.tok.kind != "num":
            self.error("expected a number")
        return Fraction(int(self.advance().text))

    def _factor(self) -> FormalPoly:
        base = self._atom()
        if self.at("^"):
            self.advance()
            base = self._lift(base) ** self.nat()
        return base

    def _atom(self) -> FormalPoly:
        t = self.tok
        if t.kind == "num":
            val = self._number()
            # a literal p/q is one rational atom
            if self.at("/") and self.tokens[self.i + 1].kind == "num":
                self.advance()
                d = self._number()
                if d == 0:
                    self.error("division by zero", t)
                val = val / d
            return FormalPoly.constant(self._gens, val)
        if t.kind == "ident":
            self.advance()
            if t.text not in self._gens:
                if not self._allow_new:
                    raise UnknownGenerator(f"unknown symbol {t.text!r}", t.line, t.column)
                self._gens.append(t.text)
            return FormalPoly.var(self._gens, t.text)
        if self.at("("):
            self.advance()
            saved = (self._gens, self._allow_new)
            inner = self._sum()
            self._gens, self._allow_new = saved
            self.expect(")")
            return inner
        self.error(f"unexpected {t.text or 'end of input'!r}")


def parse_expr(text: str):
    p = _Parser(text)
    node = p.expr()
    p.expect_end()
    if isinstance(node, Quotient):
        node = Quotient(node.generators, node.relations, text)
    return node


def parse_poly(text: str, gens: Sequence[str], allow_new: bool = False) -> FormalPoly:
    """Parse a polynomial over ``gens``.

    With ``allow_new`` unknown identifiers are appended to the generator list
    (in order of first appearance) instead of raising UnknownGenerator.
    """
    p = _Parser(text)
    work = list(gens)
    poly = p.poly(work, allow_new=allow_new)
    p.expect_end()
    return poly.embed(work) if poly.gens != tuple(work) else poly
