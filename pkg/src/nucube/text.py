"""Concrete text syntax for terms, contexts and pure lambda terms.

Grammar::

    term     := "Pi" decl "." term | "fn" decl "." term | arrow
    arrow    := appchain ("->" term)?
    appchain := atom+
    atom     := "*" | "@" | ident | "(" term ")"
    decl     := ident ("in" "{" term ("," term)* "}")? ":" term
    context  := decl ("," decl)* | ""

``@`` is the top sort and ``--`` starts a comment. A binder's variable
class is read off the degree of its declared type. Free identifiers that
are not declared in the supplied context default to class ``@``, i.e.
they are taken to be type variables.

Pure terms use ``x | \\x. M | M N``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .errors import DegreeOutOfRange, ParseError
from .terms import (
    Bind,
    Binder,
    Bound,
    App,
    Declaration,
    Name,
    PApp,
    PBound,
    PLam,
    PureTerm,
    PVar,
    Sort,
    SortTerm,
    Term,
    Var,
    free_vars,
    shift,
    type_as_sort,
    uses_bound,
)

KEYWORDS = {"Pi", "fn", "in"}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>--[^\n]*)
  | (?P<arrow>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[(){},:.*@\\])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "punct", "eof"
    text: str
    line: int
    column: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident":
            tokens.append(Token("kw" if text in KEYWORDS else "ident", text, line, col))
        elif kind in ("arrow", "punct"):
            tokens.append(Token("punct", text, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


_ATOM_START = frozenset({"*", "@", "(", "<ident>"})


class _Parser:
    def __init__(self, src: str, env: Mapping[str, Name], default_class: Sort):
        self.tokens = tokenize(src)
        self.pos = 0
        self.env = dict(env)
        self.default_class = default_class
        self.scope: list[tuple[str, Sort]] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, expected=frozenset()):
        t = self.tok
        raise ParseError(message, t.line, t.column, frozenset(expected))

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "kw") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", {repr(text)})
        t = self.tok
        self.pos += 1
        return t

    def expect_ident(self) -> Token:
        if self.tok.kind != "ident":
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", {"<ident>"})
        t = self.tok
        self.pos += 1
        return t

    def at_atom(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (t.kind == "punct" and t.text in ("*", "@", "("))

    # grammar

    def term(self) -> Term:
        if self.at("Pi") or self.at("fn"):
            binder = Binder.PI if self.tok.text == "Pi" else Binder.LAM
            self.pos += 1
            ident, name, rho, ty = self.decl()
            self.expect(".")
            self.scope.append((ident, name.cls))
            try:
                body = self.term()
            finally:
                self.scope.pop()
            return Bind(binder, name, rho, ty, body)
        return self.arrow()

    def arrow(self) -> Term:
        start = self.tok
        left = self.appchain()
        if self.at("->"):
            self.pos += 1
            right = self.term()
            try:
                cls = type_as_sort(left)
            except DegreeOutOfRange:
                raise ParseError("left side of '->' is not a type or kind", start.line, start.column)
            return Bind(Binder.PI, Name("_", cls), (), left, shift(right, 1))
        return left

    def appchain(self) -> Term:
        if not self.at_atom():
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", {"'*'", "'@'", "'('", "<ident>", "'Pi'", "'fn'"})
        t = self.atom()
        while self.at_atom():
            t = App(t, self.atom())
        return t

    def atom(self) -> Term:
        t = self.tok
        if self.at("*"):
            self.pos += 1
            return SortTerm(Sort.STAR)
        if self.at("@"):
            self.pos += 1
            return SortTerm(Sort.BOX)
        if self.at("("):
            self.pos += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.pos += 1
        return self.resolve(t.text)

    def resolve(self, ident: str) -> Term:
        for depth, (bound, cls) in enumerate(reversed(self.scope)):
            if bound == ident:
                return Bound(depth, cls)
        if ident not in self.env:
            self.env[ident] = Name(ident, self.default_class)
        return Var(self.env[ident])

    def decl(self) -> tuple[str, Name, tuple[Term, ...], Term]:
        ident_tok = self.expect_ident()
        rho: list[Term] = []
        if self.at("in"):
            self.pos += 1
            self.expect("{")
            rho.append(self.term())
            while self.at(","):
                self.pos += 1
                rho.append(self.term())
            self.expect("}")
        self.expect(":")
        ty = self.term()
        try:
            cls = type_as_sort(ty)
        except DegreeOutOfRange:
            raise ParseError(
                f"cannot resolve the class of {ident_tok.text!r}: its type is neither a type nor a kind",
                ident_tok.line,
                ident_tok.column,
            )
        return ident_tok.text, Name(ident_tok.text, cls), tuple(rho), ty

    def end(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}", {"end of input"})


def _env_of(context) -> dict[str, Name]:
    env: dict[str, Name] = {}
    for d in context or ():
        env[str(d.subject)] = d.subject
    return env


def parse_term(src: str, context=None, default_class: Sort = Sort.BOX) -> Term:
    """Parse a term; free identifiers resolve against ``context`` when given."""
    p = _Parser(src, _env_of(context), default_class)
    t = p.term()
    p.end()
    return t


def parse_context(src: str, default_class: Sort = Sort.BOX) -> tuple[Declaration, ...]:
    p = _Parser(src, {}, default_class)
    decls = []
    if p.tok.kind != "eof":
        while True:
            ident, name, rho, ty = p.decl()
            decls.append(Declaration(name, rho, ty))
            p.env[ident] = name
            if not p.at(","):
                break
            p.pos += 1
    p.end()
    return tuple(decls)


# --- printing -----------------------------------------------------------------


def _display(name: Name, rename: Mapping[Name, str] | None) -> str:
    if rename and name in rename:
        return rename[name]
    return str(name)


class _Printer:
    def __init__(self, taken: set[str], rename):
        self.taken = taken
        self.rename = rename

    def pick(self, hint: str, scope: list[str]) -> str:
        base = hint if hint not in ("_",) and hint not in KEYWORDS else "x"
        candidate = base
        k = 0
        while candidate in self.taken or candidate in scope:
            k += 1
            candidate = f"{base}{k}"
        return candidate

    def term(self, t: Term, scope: list[str], prec: int) -> str:
        if isinstance(t, SortTerm):
            return "*" if t.sort is Sort.STAR else "@"
        if isinstance(t, Var):
            return _display(t.name, self.rename)
        if isinstance(t, Bound):
            return scope[-1 - t.index]
        if isinstance(t, App):
            s = f"{self.term(t.fun, scope, 1)} {self.term(t.arg, scope, 2)}"
            return f"({s})" if prec > 1 else s
        if isinstance(t, Bind):
            if t.binder is Binder.PI and not t.restriction and not uses_bound(t.body):
                # the body does not mention the bound index, so any label works
                s = f"{self.term(t.type, scope, 1)} -> {self.term(t.body, scope + ['_'], 0)}"
            else:
                var = self.pick(t.name.base, scope)
                head = f"{t.binder.value} {var}{self.restriction(t.restriction, scope)} : {self.term(t.type, scope, 0)}"
                s = f"{head}. {self.term(t.body, scope + [var], 0)}"
            return f"({s})" if prec > 0 else s
        raise TypeError(f"not a term: {t!r}")

    def restriction(self, rho, scope) -> str:
        if not rho:
            return ""
        return " in {" + ", ".join(self.term(e, scope, 0) for e in rho) + "}"


def _taken(names, rename) -> set[str]:
    return {_display(n, rename) for n in names} | KEYWORDS


def print_term(t: Term, rename: Mapping[Name, str] | None = None) -> str:
    """Render a term in the text grammar; deterministic and re-parseable."""
    return _Printer(_taken(free_vars(t), rename), rename).term(t, [], 0)


def print_declaration(d: Declaration, rename: Mapping[Name, str] | None = None) -> str:
    pr = _Printer(_taken(free_vars(d), rename), rename)
    return f"{_display(d.subject, rename)}{pr.restriction(d.restriction, [])} : {pr.term(d.type, [], 0)}"


def print_context(ctx, rename: Mapping[Name, str] | None = None) -> str:
    return ", ".join(print_declaration(d, rename) for d in ctx)


# --- pure terms -------------------------------------------------------------------


class _PureParser(_Parser):
    def pure(self) -> PureTerm:
        if self.at("\\"):
            self.pos += 1
            ident = self.expect_ident().text
            self.expect(".")
            self.scope.append((ident, Sort.STAR))
            try:
                body = self.pure()
            finally:
                self.scope.pop()
            return PLam(Name(ident, Sort.STAR), body)
        if not self.at_pure_atom():
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", {"'\\'", "'('", "<ident>"})
        m = self.pure_atom()
        while self.at_pure_atom() or self.at("\\"):
            if self.at("\\"):
                m = PApp(m, self.pure())
                break
            m = PApp(m, self.pure_atom())
        return m

    def at_pure_atom(self) -> bool:
        return self.tok.kind == "ident" or self.at("(")

    def pure_atom(self) -> PureTerm:
        if self.at("("):
            self.pos += 1
            m = self.pure()
            self.expect(")")
            return m
        ident = self.expect_ident().text
        for depth, (bound, _) in enumerate(reversed(self.scope)):
            if bound == ident:
                return PBound(depth)
        return PVar(Name(ident, Sort.STAR))


def parse_pure(src: str) -> PureTerm:
    p = _PureParser(src, {}, Sort.STAR)
    m = p.pure()
    p.end()
    return m


def print_pure(m: PureTerm) -> str:
    pr = _Printer({str(n) for n in free_vars(m)} | KEYWORDS, None)

    def go(m: PureTerm, scope: list[str], prec: int) -> str:
        if isinstance(m, PVar):
            return str(m.name)
        if isinstance(m, PBound):
            return scope[-1 - m.index]
        if isinstance(m, PApp):
            s = f"{go(m.fun, scope, 1)} {go(m.arg, scope, 2)}"
            return f"({s})" if prec > 1 else s
        if isinstance(m, PLam):
            var = pr.pick(m.name.base, scope)
            s = f"\\{var}. {go(m.body, scope + [var], 0)}"
            return f"({s})" if prec > 0 else s
        raise TypeError(f"not a pure term: {m!r}")

    return go(m, [], 0)
