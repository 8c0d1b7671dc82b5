"""Lambda-calculus with letrec: abstract syntax and parser.

Concrete syntax: ``\\x. body`` for abstraction, juxtaposition for
left-associative application, ``letrec x1 = t1; ...; xn = tn in t`` for
recursive bindings, parentheses for grouping.  Identifiers match
``[a-zA-Z_][a-zA-Z0-9_']*``.  Only closed terms are accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class TermSyntaxError(Exception):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at offset {position})")


class UnboundVariable(Exception):
    def __init__(self, name: str, position: int):
        self.name = name
        self.position = position
        super().__init__(f"unbound variable {name!r} (at offset {position})")


class DuplicateBinding(Exception):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"duplicate letrec binding {name!r}")


class Term:
    pass


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class App(Term):
    fun: Term
    arg: Term


@dataclass(frozen=True)
class Abs(Term):
    name: str
    body: Term


@dataclass(frozen=True)
class Letrec(Term):
    bindings: tuple[tuple[str, Term], ...]
    body: Term


_IDENT = re.compile(r"[a-zA-Z_][a-zA-Z0-9_']*")
_KEYWORDS = {"letrec", "in"}


@dataclass(frozen=True)
class _Token:
    kind: str  # 'ident', 'lambda', 'dot', 'lpar', 'rpar', 'eq', 'semi', 'letrec', 'in', 'eof'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "\\":
            tokens.append(_Token("lambda", c, i))
            i += 1
        elif c == ".":
            tokens.append(_Token("dot", c, i))
            i += 1
        elif c == "(":
            tokens.append(_Token("lpar", c, i))
            i += 1
        elif c == ")":
            tokens.append(_Token("rpar", c, i))
            i += 1
        elif c == "=":
            tokens.append(_Token("eq", c, i))
            i += 1
        elif c == ";":
            tokens.append(_Token("semi", c, i))
            i += 1
        else:
            m = _IDENT.match(text, i)
            if not m:
                raise TermSyntaxError(f"unexpected character {c!r}", i)
            word = m.group()
            kind = word if word in _KEYWORDS else "ident"
            tokens.append(_Token(kind, word, i))
            i = m.end()
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, kind: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise TermSyntaxError(f"expected {kind}, found {tok.text or 'end of input'!r}", tok.pos)
        self.pos += 1
        return tok

    def term(self, scope: frozenset[str]) -> Term:
        tok = self.peek()
        if tok.kind == "lambda":
            self.take("lambda")
            name = self.take("ident").text
            self.take("dot")
            return Abs(name, self.term(scope | {name}))
        if tok.kind == "letrec":
            return self.letrec(scope)
        return self.application(scope)

    def letrec(self, scope: frozenset[str]) -> Term:
        # Binding bodies may use any of the group's names, so the names
        # are collected in a skip pass first and the bodies reparsed.
        self.take("letrec")
        names: list[str] = []
        raw: list[tuple[str, int, int]] = []
        while True:
            name_tok = self.take("ident")
            if name_tok.text in names:
                raise DuplicateBinding(name_tok.text)
            names.append(name_tok.text)
            self.take("eq")
            start = self.pos
            self.skip_binding_body()
            raw.append((name_tok.text, start, self.pos))
            if self.peek().kind == "semi":
                self.take("semi")
            else:
                break
        self.take("in")
        inner = scope | set(names)
        bindings = []
        end = self.pos
        for name, start, stop in raw:
            self.pos = start
            bindings.append((name, self.term(inner)))
            if self.pos != stop:
                raise TermSyntaxError("malformed letrec binding", self.tokens[start].pos)
        self.pos = end
        body = self.term(inner)
        return Letrec(tuple(bindings), body)

    def skip_binding_body(self) -> None:
        # A binding body ends at ';' or 'in' outside parentheses and
        # outside any nested letrec (letrec..in pairs nest like brackets).
        pdepth = 0
        ldepth = 0
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                raise TermSyntaxError("unterminated letrec", tok.pos)
            if pdepth == 0 and ldepth == 0 and tok.kind in ("semi", "in"):
                return
            if tok.kind == "lpar":
                pdepth += 1
            elif tok.kind == "rpar":
                if pdepth == 0:
                    raise TermSyntaxError("unbalanced ')'", tok.pos)
                pdepth -= 1
            elif tok.kind == "letrec":
                ldepth += 1
            elif tok.kind == "in":
                if ldepth == 0:
                    raise TermSyntaxError("'in' without letrec", tok.pos)
                ldepth -= 1
            self.pos += 1

    def application(self, scope: frozenset[str]) -> Term:
        result = self.atom(scope)
        while self.peek().kind in ("ident", "lpar", "lambda", "letrec"):
            tok = self.peek()
            if tok.kind in ("lambda", "letrec"):
                # Trailing lambda/letrec extends as far right as possible.
                result = App(result, self.term(scope))
                break
            result = App(result, self.atom(scope))
        return result

    def atom(self, scope: frozenset[str]) -> Term:
        tok = self.peek()
        if tok.kind == "ident":
            self.take("ident")
            if tok.text not in scope:
                raise UnboundVariable(tok.text, tok.pos)
            return Var(tok.text)
        if tok.kind == "lpar":
            self.take("lpar")
            inner = self.term(scope)
            self.take("rpar")
            return inner
        raise TermSyntaxError(f"expected a term, found {tok.text or 'end of input'!r}", tok.pos)


def parse_term(text: str) -> Term:
    """Parse a closed term; unbound names and duplicate bindings are errors."""
    parser = _Parser(_tokenize(text))
    result = parser.term(frozenset())
    parser.take("eof")
    return result


def format_term(t: Term) -> str:
    """Render a term back to concrete syntax (mainly for messages)."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Abs):
        return f"\\{t.name}. {format_term(t.body)}"
    if isinstance(t, App):
        fun = format_term(t.fun)
        arg = format_term(t.arg)
        if isinstance(t.fun, (Abs, Letrec)):
            fun = f"({fun})"
        if isinstance(t.arg, (App, Abs, Letrec)):
            arg = f"({arg})"
        return f"{fun} {arg}"
    if isinstance(t, Letrec):
        binds = "; ".join(f"{n} = {format_term(b)}" for n, b in t.bindings)
        return f"letrec {binds} in {format_term(t.body)}"
    raise TypeError(f"not a term: {t!r}")
