"""Concrete ASCII syntax: tokenizer, recursive-descent parser and renderer.

Formulas::

    phi ::= atom | tt | ff | !phi | phi & phi | phi | phi | phi -> phi
          | F phi | G phi | Fp phi | <R> phi | [R] phi | <<R>> phi | (phi)

Guards::

    R ::= prop | (prop) | {phi}? | R + R | R ; R | R* | (R)

Precedence from loosest to tightest: ``->`` (right associative), ``|``,
``&``, prefix operators.  In guards: ``+`` < ``;`` < ``*``.
"""
from __future__ import annotations

import re

from .formula import (
    FF, TT, Always, And, Atom, Box, Diamond, Eventually, Formula, GConcat, GProp,
    GStar, GTest, Guard, GUnion, Implies, LogicId, Not, Or, PromptDiamond,
    PromptEventually, check_fragment, is_propositional,
)


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


KEYWORDS = {"F", "G", "Fp", "tt", "ff"}
_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><<|>>|->|[!&|<>\[\]{}()?+;*]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start("ident") if m.group("ident") else m.start("op")
        if m.group("ident"):
            word = m.group("ident")
            tokens.append(("kw" if word in KEYWORDS else "ident", word, start))
        else:
            tokens.append(("op", m.group("op"), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # helpers
    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def at(self, value: str) -> bool:
        kind, v, _ = self.tokens[self.i]
        return v == value and kind in ("op", "kw")

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        if not self.at(value):
            kind, v, pos = self.peek()
            found = "end of input" if kind == "eof" else repr(v)
            raise ParseError(f"expected {value!r}, found {found}", pos)
        return self.advance()

    # formulas
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.advance()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        node = self.conjunction()
        while self.at("|"):
            self.advance()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Formula:
        node = self.unary()
        while self.at("&"):
            self.advance()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        kind, v, pos = self.peek()
        if self.at("!"):
            self.advance()
            return Not(self.unary())
        if kind == "kw" and v in ("F", "G", "Fp"):
            self.advance()
            ctor = {"F": Eventually, "G": Always, "Fp": PromptEventually}[v]
            return ctor(self.unary())
        if self.at("<<"):
            self.advance()
            r = self.guard()
            self.expect(">>")
            return PromptDiamond(r, self.unary())
        if self.at("<"):
            self.advance()
            r = self.guard()
            self.expect(">")
            return Diamond(r, self.unary())
        if self.at("["):
            self.advance()
            r = self.guard()
            self.expect("]")
            return Box(r, self.unary())
        return self.primary()

    def primary(self) -> Formula:
        kind, v, pos = self.peek()
        if kind == "ident":
            self.advance()
            return Atom(v)
        if kind == "kw" and v == "tt":
            self.advance()
            return TT()
        if kind == "kw" and v == "ff":
            self.advance()
            return FF()
        if self.at("("):
            self.advance()
            node = self.formula()
            self.expect(")")
            return node
        found = "end of input" if kind == "eof" else repr(v)
        raise ParseError(f"expected a formula, found {found}", pos)

    # guards
    def guard(self) -> Guard:
        node = self.guard_seq()
        while self.at("+"):
            self.advance()
            node = GUnion(node, self.guard_seq())
        return node

    def guard_seq(self) -> Guard:
        node = self.guard_star()
        while self.at(";"):
            self.advance()
            node = GConcat(node, self.guard_star())
        return node

    def guard_star(self) -> Guard:
        node = self.guard_atom()
        while self.at("*"):
            self.advance()
            node = GStar(node)
        return node

    def guard_atom(self) -> Guard:
        kind, v, pos = self.peek()
        if self.at("{"):
            self.advance()
            body = self.formula()
            self.expect("}")
            self.expect("?")
            return GTest(body)
        if kind == "ident" or (kind == "kw" and v in ("tt", "ff")) or self.at("!"):
            return GProp(self.prop_unary())
        if self.at("("):
            mark = self.i
            self.advance()
            try:
                prop = self.prop_disjunction()
                self.expect(")")
                return GProp(prop)
            except ParseError:
                self.i = mark + 1
            inner = self.guard()
            self.expect(")")
            return inner
        found = "end of input" if kind == "eof" else repr(v)
        raise ParseError(f"expected a guard, found {found}", pos)

    def prop_disjunction(self) -> Formula:
        node = self.prop_conjunction()
        while self.at("|"):
            self.advance()
            node = Or(node, self.prop_conjunction())
        return node

    def prop_conjunction(self) -> Formula:
        node = self.prop_unary()
        while self.at("&"):
            self.advance()
            node = And(node, self.prop_unary())
        return node

    def prop_unary(self) -> Formula:
        kind, v, pos = self.peek()
        if self.at("!"):
            self.advance()
            return Not(self.prop_unary())
        if kind == "ident":
            self.advance()
            return Atom(v)
        if kind == "kw" and v == "tt":
            self.advance()
            return TT()
        if kind == "kw" and v == "ff":
            self.advance()
            return FF()
        if self.at("("):
            self.advance()
            node = self.prop_disjunction()
            self.expect(")")
            return node
        found = "end of input" if kind == "eof" else repr(v)
        raise ParseError(f"expected a propositional formula, found {found}", pos)


def parse(text: str, logic: LogicId | None = None) -> Formula:
    """Parse ``text``; when ``logic`` is given, also enforce its fragment."""
    p = _Parser(text)
    phi = p.formula()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {v!r}", pos)
    if logic is not None:
        check_fragment(phi, logic)
    return phi


def parse_guard(text: str) -> Guard:
    p = _Parser(text)
    r = p.guard()
    kind, v, pos = p.peek()
    if kind != "eof":
        raise ParseError(f"unexpected {v!r}", pos)
    return r


# --- rendering ----------------------------------------------------------------

_PREC = {Implies: 1, Or: 2, And: 3}


def _prec(phi: Formula) -> int:
    return _PREC.get(type(phi), 4 if not isinstance(phi, (Atom, TT, FF)) else 5)


def render(phi: Formula) -> str:
    return _render(phi, 0)


def _render(phi: Formula, need: int) -> str:
    text = _render_bare(phi)
    return f"({text})" if _prec(phi) < need else text


def _render_bare(phi: Formula) -> str:
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, TT):
        return "tt"
    if isinstance(phi, FF):
        return "ff"
    if isinstance(phi, Implies):
        return f"{_render(phi.left, 2)} -> {_render(phi.right, 1)}"
    if isinstance(phi, Or):
        return f"{_render(phi.left, 2)} | {_render(phi.right, 3)}"
    if isinstance(phi, And):
        return f"{_render(phi.left, 3)} & {_render(phi.right, 4)}"
    if isinstance(phi, Not):
        return "!" + _render(phi.arg, 4)
    if isinstance(phi, Eventually):
        return "F " + _render(phi.arg, 4)
    if isinstance(phi, Always):
        return "G " + _render(phi.arg, 4)
    if isinstance(phi, PromptEventually):
        return "Fp " + _render(phi.arg, 4)
    if isinstance(phi, Diamond):
        return f"<{render_guard(phi.regex)}> {_render(phi.arg, 4)}"
    if isinstance(phi, Box):
        return f"[{render_guard(phi.regex)}] {_render(phi.arg, 4)}"
    if isinstance(phi, PromptDiamond):
        return f"<<{render_guard(phi.regex)}>> {_render(phi.arg, 4)}"
    raise TypeError(f"not a formula: {phi!r}")


_GPREC = {GUnion: 1, GConcat: 2, GStar: 3}


def render_guard(r: Guard) -> str:
    return _render_guard(r, 0)


def _render_guard(r: Guard, need: int) -> str:
    if isinstance(r, GProp):
        if isinstance(r.prop, (Atom, TT, FF)):
            return render(r.prop)
        if not is_propositional(r.prop):
            raise TypeError(f"guard letter is not propositional: {r.prop!r}")
        return f"({render(r.prop)})"
    if isinstance(r, GTest):
        return "{" + render(r.formula) + "}?"
    if isinstance(r, GUnion):
        text = f"{_render_guard(r.left, 1)} + {_render_guard(r.right, 2)}"
    elif isinstance(r, GConcat):
        text = f"{_render_guard(r.left, 2)};{_render_guard(r.right, 3)}"
    elif isinstance(r, GStar):
        text = _render_guard(r.arg, 3) + "*"
    else:
        raise TypeError(f"not a guard: {r!r}")
    return f"({text})" if _GPREC[type(r)] < need else text
