"""Plain-text grammar for formulas and terms.

Formulas: atoms ``[a-z][a-zA-Z0-9_]*``, ``false``, right-associative ``->``,
prefix ``B1``/``B2`` for belief, ``T1``/``T2`` for justifiability, and
``[term]1``/``[term]2`` for evidence assertions.  Evidence and justifiability
bodies must be propositional; this is rejected at parse time.

Terms: identifiers are constants, ``x{goal}`` and ``x{goal | p1, p2}`` are
variables, ``.`` is left-associative application.
"""

from __future__ import annotations

import re
from typing import List, Optional, Tuple

from .errors import ParseError
from .formulas import (
    FALSUM,
    Atom,
    Box,
    Falsum,
    Formula,
    Implies,
    Just,
    PropFormula,
    Triangle,
    is_propositional,
)
from .terms import App, Const, Term, Var

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<num>\d+)"
    r"|(?P<punct>[()\[\]{}|,.]))"
)

_ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


def _tokenize(src: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: Optional[str] = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", tok[2])
        return tok

    def at_punct(self, ch: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "punct" and value == ch

    # -- formulas ---------------------------------------------------------

    def formula(self, prop_only: bool = False) -> Formula:
        left = self.unary(prop_only)
        if self.peek()[0] == "arrow":
            self.next()
            right = self.formula(prop_only)
            return Implies(left, right)
        return left

    def unary(self, prop_only: bool) -> Formula:
        kind, value, pos = self.peek()
        if kind == "punct" and value == "(":
            self.next()
            f = self.formula(prop_only)
            self.expect("punct", ")")
            return f
        if kind == "punct" and value == "[":
            if prop_only:
                raise ParseError("evidence assertions are not propositional", pos)
            self.next()
            t = self.term()
            self.expect("punct", "]")
            agent = self.agent_index()
            body = self.unary(prop_only=True)
            return Just(t, agent, body)
        if kind == "ident":
            if value == "false":
                self.next()
                return FALSUM
            if value in ("B1", "B2"):
                if prop_only:
                    raise ParseError("belief operators are not propositional", pos)
                self.next()
                return Box(int(value[1]), self.unary(prop_only=False))
            if value in ("T1", "T2"):
                if prop_only:
                    raise ParseError("justifiability claims are not propositional", pos)
                self.next()
                return Triangle(int(value[1]), self.unary(prop_only=True))
            if _ATOM_RE.match(value):
                self.next()
                return Atom(value)
            raise ParseError(f"atoms must start with a lowercase letter: {value!r}", pos)
        raise ParseError(f"expected a formula, found {value or 'end of input'!r}", pos)

    def agent_index(self) -> int:
        tok = self.next()
        if tok[0] == "num" and tok[1] in ("1", "2"):
            return int(tok[1])
        raise ParseError(f"expected agent index 1 or 2, found {tok[1]!r}", tok[2])

    # -- terms ------------------------------------------------------------

    def term(self) -> Term:
        t = self.term_primary()
        while self.at_punct("."):
            self.next()
            t = App(t, self.term_primary())
        return t

    def term_primary(self) -> Term:
        kind, value, pos = self.peek()
        if kind == "punct" and value == "(":
            self.next()
            t = self.term()
            self.expect("punct", ")")
            return t
        if kind == "ident":
            self.next()
            if value == "x" and self.at_punct("{"):
                return self.variable_body()
            return Const(value)
        raise ParseError(f"expected a term, found {value or 'end of input'!r}", pos)

    def variable_body(self) -> Var:
        self.expect("punct", "{")
        goal = self.formula(prop_only=True)
        premises: List[PropFormula] = []
        if self.at_punct("|"):
            self.next()
            premises.append(self.formula(prop_only=True))
            while self.at_punct(","):
                self.next()
                premises.append(self.formula(prop_only=True))
        self.expect("punct", "}")
        return Var(goal, tuple(premises))


def parse_formula(src: str) -> Formula:
    p = _Parser(src)
    f = p.formula()
    p.expect("eof")
    return f


def parse_prop(src: str) -> PropFormula:
    p = _Parser(src)
    f = p.formula(prop_only=True)
    p.expect("eof")
    return f


def parse_term(src: str) -> Term:
    p = _Parser(src)
    t = p.term()
    p.expect("eof")
    return t


def _body_str(f: Formula) -> str:
    if isinstance(f, (Atom, Falsum, Box, Just, Triangle)):
        return format_formula(f)
    return f"({format_formula(f)})"


def format_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, Implies):
        left = format_formula(f.antecedent)
        if isinstance(f.antecedent, Implies):
            left = f"({left})"
        return f"{left} -> {format_formula(f.consequent)}"
    if isinstance(f, Box):
        return f"B{f.agent} {_body_str(f.body)}"
    if isinstance(f, Triangle):
        return f"T{f.agent} {_body_str(f.body)}"
    if isinstance(f, Just):
        return f"[{format_term(f.term)}]{f.agent} {_body_str(f.body)}"
    raise ValueError("dynamic operators have no inline text form")


def format_term(t: Term) -> str:
    if isinstance(t, Const):
        return t.name
    if isinstance(t, Var):
        goal = format_formula(t.goal)
        if t.premises:
            premises = ", ".join(format_formula(p) for p in t.premises)
            return f"x{{{goal} | {premises}}}"
        return f"x{{{goal}}}"
    fn = format_term(t.fn)
    arg = format_term(t.arg)
    if isinstance(t.arg, App):
        arg = f"({arg})"
    return f"{fn} . {arg}"
