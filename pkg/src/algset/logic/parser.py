"""Concrete syntax: tokenizer, recursive-descent parser and printer.

Grammar::

    document   := { preamble-line NEWLINE } [ "---" NEWLINE ] formula
    preamble   := "sort" NAME {NAME}
                | "relation" NAME ":" NAME {NAME}
                | "member" NAME NAME              (element sort, set sort)
                | "var" NAME {NAME} ":" NAME
    formula    := implication [ "<->" implication ]
    implication:= disjunction [ "->" implication ]
    disjunction:= conjunction { "\\/" conjunction }
    conjunction:= unary { "/\\" unary }
    unary      := "~" unary | quantified | atom
    quantified := ("forall" | "exists") NAME [ ":" NAME | "in" NAME ] "." formula
                | "B" "(" NAME "in" NAME "," NAME "in" NAME ")" formula
    atom       := "true" | "false" | "(" formula ")"
                | NAME "=" NAME | NAME "in" NAME | NAME "(" [ NAME { "," NAME } ] ")"

A preamble is optional; without one no sort checking takes place.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from algset.errors import ParseError
from algset.logic.syntax import (
    And,
    Bi,
    BExists,
    BForall,
    Bottom,
    Eq,
    Exists,
    Forall,
    Formula,
    Iff,
    Implies,
    Mem,
    Not,
    Or,
    Rel,
    Top,
)

KEYWORDS = {"forall", "exists", "in", "true", "false", "B"}
_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<op><->|->|/\\|\\/|[~().,:=])
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1) -> list[Token]:
    out = []
    pos, col0 = 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - col0 + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            col0 = m.end()
        elif kind != "ws":
            if kind == "name" and m.group() in KEYWORDS:
                kind = "kw"
            out.append(Token(kind, m.group(), line, pos - col0 + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - col0 + 1))
    return out


@dataclass
class Signature:
    """Sorts, relation types, the membership typing and free-variable sorts."""

    sorts: list[str] = field(default_factory=list)
    relations: dict[str, tuple[str, ...]] = field(default_factory=dict)
    membership: tuple[str, str] | None = None
    variables: dict[str, str] = field(default_factory=dict)

    @property
    def default_sort(self) -> str | None:
        return self.sorts[0] if len(self.sorts) == 1 else None


@dataclass
class Document:
    signature: Signature
    formula: Formula


class _Parser:
    def __init__(self, tokens: list[Token], sig: Signature | None):
        self.toks = tokens
        self.i = 0
        self.sig = sig
        self.scope: list[tuple[str, str]] = []

    # -- token helpers
    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("op", "kw") and t.text == text

    def expect(self, text: str) -> Token:
        t = self.next()
        if t.kind not in ("op", "kw") or t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.column)
        return t

    def name(self) -> Token:
        t = self.next()
        if t.kind != "name":
            raise ParseError(f"expected a name, found {t.text or 'end of input'!r}", t.line, t.column)
        return t

    # -- sorts
    def sort_of(self, tok: Token) -> str | None:
        if self.sig is None:
            return None
        for v, s in reversed(self.scope):
            if v == tok.text:
                return s
        if tok.text in self.sig.variables:
            return self.sig.variables[tok.text]
        raise ParseError(f"undeclared variable {tok.text!r}", tok.line, tok.column)

    def check_sort(self, tok: Token, want: str | None) -> None:
        got = self.sort_of(tok)
        if self.sig is not None and want is not None and got != want:
            raise ParseError(f"variable {tok.text!r} has sort {got}, expected {want}", tok.line, tok.column)

    def binder_sort(self, tok: Token, declared: str | None) -> str | None:
        if self.sig is None:
            return declared
        s = declared or self.sig.default_sort
        if s is None:
            raise ParseError(f"quantifier over {tok.text!r} needs a sort", tok.line, tok.column)
        if s not in self.sig.sorts:
            raise ParseError(f"unknown sort {s!r}", tok.line, tok.column)
        return s

    def member_sorts(self, tok: Token) -> tuple[str | None, str | None]:
        if self.sig is None:
            return None, None
        if self.sig.membership is None:
            raise ParseError("membership used without a 'member' declaration", tok.line, tok.column)
        return self.sig.membership

    # -- grammar
    def formula(self) -> Formula:
        left = self.implication()
        if self.at("<->"):
            self.next()
            return Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.next()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("\\/"):
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("/\\"):
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("~"):
            self.next()
            return Not(self.unary())
        if self.at("forall") or self.at("exists"):
            return self.quantified()
        if self.at("B"):
            return self.biquantifier()
        return self.atom()

    def quantified(self) -> Formula:
        q = self.next().text
        v = self.name()
        if self.at("in"):
            self.next()
            bound = self.name()
            elem, coll = self.member_sorts(bound)
            self.check_sort(bound, coll)
            self.expect(".")
            self.scope.append((v.text, elem))
            body = self.formula()
            self.scope.pop()
            return (BForall if q == "forall" else BExists)(v.text, bound.text, body)
        declared = None
        if self.at(":"):
            self.next()
            declared = self.name().text
        sort = self.binder_sort(v, declared)
        self.expect(".")
        self.scope.append((v.text, sort))
        body = self.formula()
        self.scope.pop()
        return (Forall if q == "forall" else Exists)(v.text, declared, body)

    def biquantifier(self) -> Formula:
        self.expect("B")
        self.expect("(")
        x = self.name()
        self.expect("in")
        a = self.name()
        self.expect(",")
        y = self.name()
        self.expect("in")
        b = self.name()
        self.expect(")")
        elem, coll = self.member_sorts(a)
        self.check_sort(a, coll)
        self.check_sort(b, coll)
        self.scope += [(x.text, elem), (y.text, elem)]
        body = self.unary()
        del self.scope[-2:]
        return Bi(x.text, a.text, y.text, b.text, body)

    def atom(self) -> Formula:
        t = self.next()
        if t.kind == "kw" and t.text == "true":
            return Top()
        if t.kind == "kw" and t.text == "false":
            return Bottom()
        if t.kind == "op" and t.text == "(":
            inner = self.formula()
            self.expect(")")
            return inner
        if t.kind != "name":
            raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.line, t.column)
        if self.at("="):
            self.next()
            r = self.name()
            if self.sig is not None and self.sort_of(t) != self.sort_of(r):
                raise ParseError(f"equality between sorts {self.sort_of(t)} and {self.sort_of(r)}",
                                 r.line, r.column)
            return Eq(t.text, r.text)
        if self.at("in"):
            self.next()
            r = self.name()
            elem, coll = self.member_sorts(t)
            self.check_sort(t, elem)
            self.check_sort(r, coll)
            return Mem(t.text, r.text)
        if self.at("("):
            self.next()
            args = []
            if not self.at(")"):
                args.append(self.name())
                while self.at(","):
                    self.next()
                    args.append(self.name())
            self.expect(")")
            if self.sig is not None:
                if t.text not in self.sig.relations:
                    raise ParseError(f"undeclared relation {t.text!r}", t.line, t.column)
                want = self.sig.relations[t.text]
                if len(want) != len(args):
                    raise ParseError(f"{t.text} takes {len(want)} arguments", t.line, t.column)
                for a, s in zip(args, want):
                    self.check_sort(a, s)
            return Rel(t.text, tuple(a.text for a in args))
        raise ParseError(f"expected '=', 'in' or '(' after {t.text!r}", self.peek().line, self.peek().column)


def _parse_tokens(tokens, sig):
    p = _Parser(tokens, sig)
    phi = p.formula()
    t = p.peek()
    if t.kind != "eof":
        raise ParseError(f"trailing input {t.text!r}", t.line, t.column)
    return phi


def parse(text: str, signature: Signature | None = None) -> Formula:
    """Parse a single formula, sort-checking it when a signature is given."""
    return _parse_tokens(tokenize(text), signature)


def parse_signature(lines, first_line: int = 1) -> Signature:
    sig = Signature()
    for n, raw in enumerate(lines, start=first_line):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.replace(":", " : ").split()
        head, rest = words[0], words[1:]
        if head == "sort" and rest and ":" not in rest:
            sig.sorts.extend(rest)
        elif head == "relation" and len(rest) >= 2 and rest[1] == ":":
            sig.relations[rest[0]] = tuple(rest[2:])
        elif head == "member" and len(rest) == 2:
            sig.membership = (rest[0], rest[1])
        elif head == "var" and ":" in rest and rest.index(":") == len(rest) - 2:
            for v in rest[:-2]:
                sig.variables[v] = rest[-1]
        else:
            raise ParseError(f"bad preamble line {line!r}", n, 1)
        used = [s for ss in sig.relations.values() for s in ss] + list(sig.variables.values())
        used += list(sig.membership or ())
        for s in used:
            if s not in sig.sorts:
                raise ParseError(f"unknown sort {s!r}", n, 1)
    return sig


def parse_document(text: str) -> Document:
    """A preamble, a line ``---``, then a formula.  Without ``---`` the text is a bare formula."""
    lines = text.split("\n")
    if "---" in (l.strip() for l in lines):
        cut = [l.strip() for l in lines].index("---")
        sig = parse_signature(lines[:cut])
        body = "\n".join(lines[cut + 1:])
        return Document(sig, _parse_tokens(tokenize(body, cut + 2), sig))
    return Document(Signature(), parse(text))


# -- printing -------------------------------------------------------------------------

_OPS = {And: "/\\", Or: "\\/", Implies: "->", Iff: "<->"}


def show(phi: Formula) -> str:
    """Print with every binary connective parenthesized; parse(show(phi)) == phi."""
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Bottom):
        return "false"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Mem):
        return f"{phi.elem} in {phi.coll}"
    if isinstance(phi, Rel):
        return f"{phi.name}({', '.join(phi.args)})"
    if isinstance(phi, Not):
        return "~" + _operand(phi.body)
    if type(phi) in _OPS:
        return f"({_operand(phi.left)} {_OPS[type(phi)]} {_operand(phi.right)})"
    if isinstance(phi, (Forall, Exists)):
        q = "forall" if isinstance(phi, Forall) else "exists"
        sort = f":{phi.sort}" if phi.sort else ""
        return f"{q} {phi.var}{sort}. {show(phi.body)}"
    if isinstance(phi, (BForall, BExists)):
        q = "forall" if isinstance(phi, BForall) else "exists"
        return f"{q} {phi.var} in {phi.bound}. {show(phi.body)}"
    if isinstance(phi, Bi):
        return f"B({phi.x} in {phi.a}, {phi.y} in {phi.b}) {_operand(phi.body)}"
    raise TypeError(f"not a formula: {phi!r}")


def _operand(phi: Formula) -> str:
    s = show(phi)
    if isinstance(phi, (Forall, Exists, BForall, BExists, Bi)):
        return f"({s})"
    return s
