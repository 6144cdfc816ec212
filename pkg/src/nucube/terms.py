"""Terms, declarations and contexts of the nu-cube, plus the pure lambda terms.

Bound variables are de Bruijn indices and free variables are ``Name``s
(a locally nameless representation), so alpha-equivalent terms are equal
as Python values and substitution cannot capture.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import DegreeOutOfRange


class Sort(enum.Enum):
    STAR = "*"
    BOX = "@"

    def __str__(self) -> str:
        return "*" if self is Sort.STAR else "□"


class Binder(enum.Enum):
    LAM = "fn"
    PI = "Pi"


_fresh_counter = itertools.count(1)


def _cached_hash(cls):
    # structural hashing is recursive; cache it on the instance
    gen = cls.__hash__

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = gen(self)
            object.__setattr__(self, "_hash", h)
            return h

    cls.__hash__ = __hash__
    return cls


@_cached_hash
@dataclass(frozen=True, order=True)
class Name:
    """A variable name: ``base`` plus its name class and a fresh index.

    Parsed and hand-built names have ``index == 0``; ``fresh`` hands out
    globally unique positive indices.
    """

    base: str
    cls: Sort
    index: int = 0

    def __str__(self) -> str:
        return self.base if self.index == 0 else f"{self.base}'{self.index}"

    def fresh(self) -> Name:
        return Name(self.base, self.cls, next(_fresh_counter))


def fresh_name(base: str, cls: Sort) -> Name:
    return Name(base, cls, next(_fresh_counter))


class Term:
    """Base class of the term syntax. Instances are immutable."""

    __slots__ = ()

    def __str__(self) -> str:
        from .text import print_term

        return print_term(self)


@_cached_hash
@dataclass(frozen=True, repr=False)
class SortTerm(Term):
    sort: Sort

    def __repr__(self) -> str:
        return f"SortTerm({self.sort.name})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class Var(Term):
    """A free variable."""

    name: Name

    def __repr__(self) -> str:
        return f"Var({self.name!s})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class Bound(Term):
    """A bound variable: de Bruijn index plus the class of its binder."""

    index: int
    cls: Sort

    def __repr__(self) -> str:
        return f"Bound({self.index})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class Bind(Term):
    """``binder name rho : type . body``.

    ``name`` is only a printing hint and takes no part in equality, except
    for the variable's class, which is part of its identity. The restriction
    and the type are outside the scope of the bound variable; ``body`` is
    inside it.
    """

    binder: Binder
    name: Name = field(compare=False)
    restriction: tuple[Term, ...]
    type: Term
    body: Term
    cls: Sort = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cls", self.name.cls)

    def __repr__(self) -> str:
        return f"Bind({self.binder.value}, {self.name!s}, {self.restriction!r}, {self.type!r}, {self.body!r})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class App(Term):
    fun: Term
    arg: Term

    def __repr__(self) -> str:
        return f"App({self.fun!r}, {self.arg!r})"


STAR = SortTerm(Sort.STAR)
BOX = SortTerm(Sort.BOX)

Restriction = tuple  # tuple[Term, ...]; () is the null restriction


@_cached_hash
@dataclass(frozen=True)
class Declaration:
    """``subject rho : type``; an empty restriction is the plain ``x : A``."""

    subject: Name
    restriction: tuple[Term, ...]
    type: Term

    def __str__(self) -> str:
        from .text import print_declaration

        return print_declaration(self)


@_cached_hash
@dataclass(frozen=True)
class RestrictedDeclaration:
    subject: Name
    restriction: tuple[Term, ...]

    def __post_init__(self):
        if not self.restriction:
            raise ValueError("a restricted declaration needs a nonempty restriction")


Context = tuple  # tuple[Declaration, ...]
RestrictedContext = tuple  # tuple[RestrictedDeclaration, ...]


def decl(subject: Name, type_: Term, restriction: Iterable[Term] = ()) -> Declaration:
    return Declaration(subject, tuple(restriction), type_)


# --- pure (type-free) lambda terms -----------------------------------------


class PureTerm:
    __slots__ = ()

    def __str__(self) -> str:
        from .text import print_pure

        return print_pure(self)


@_cached_hash
@dataclass(frozen=True, repr=False)
class PVar(PureTerm):
    name: Name

    def __repr__(self) -> str:
        return f"PVar({self.name!s})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class PBound(PureTerm):
    index: int

    def __repr__(self) -> str:
        return f"PBound({self.index})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class PLam(PureTerm):
    name: Name = field(compare=False)
    body: PureTerm

    def __repr__(self) -> str:
        return f"PLam({self.name!s}, {self.body!r})"


@_cached_hash
@dataclass(frozen=True, repr=False)
class PApp(PureTerm):
    fun: PureTerm
    arg: PureTerm

    def __repr__(self) -> str:
        return f"PApp({self.fun!r}, {self.arg!r})"


SyntaxEntity = Union[Term, Declaration, RestrictedDeclaration, PureTerm, tuple]


# --- degree and sort helpers -----------------------------------------------


_SORT_DEGREE = {Sort.BOX: 3, Sort.STAR: 2}


def degree(t: Term) -> int:
    """The 0..3 level of a term: objects, types, kinds, the top sort."""
    while True:
        if isinstance(t, SortTerm):
            return _SORT_DEGREE[t.sort]
        if isinstance(t, Var):
            return _SORT_DEGREE[t.name.cls] - 2
        if isinstance(t, Bound):
            return _SORT_DEGREE[t.cls] - 2
        if isinstance(t, Bind):
            t = t.body
        elif isinstance(t, App):
            t = t.fun
        else:
            raise TypeError(f"not a term: {t!r}")


def req_sort(t: Term) -> Sort:
    d = degree(t)
    if d == 0:
        return Sort.STAR
    if d == 1:
        return Sort.BOX
    raise DegreeOutOfRange(f"req_sort needs degree 0 or 1, got {d}")


def type_as_sort(t: Term) -> Sort:
    d = degree(t)
    if d == 1:
        return Sort.STAR
    if d == 2:
        return Sort.BOX
    raise DegreeOutOfRange(f"type_as_sort needs degree 1 or 2, got {d}")


# --- de Bruijn machinery -----------------------------------------------------


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    if by == 0:
        return t
    if isinstance(t, Bound):
        return Bound(t.index + by, t.cls) if t.index >= cutoff else t
    if isinstance(t, App):
        return App(shift(t.fun, by, cutoff), shift(t.arg, by, cutoff))
    if isinstance(t, Bind):
        return Bind(
            t.binder,
            t.name,
            tuple(shift(e, by, cutoff) for e in t.restriction),
            shift(t.type, by, cutoff),
            shift(t.body, by, cutoff + 1),
        )
    return t


def instantiate(body: Term, value: Term, depth: int = 0) -> Term:
    """Replace bound index ``depth`` by ``value`` and drop one binder level."""
    if isinstance(body, Bound):
        if body.index == depth:
            return shift(value, depth)
        if body.index > depth:
            return Bound(body.index - 1, body.cls)
        return body
    if isinstance(body, App):
        return App(instantiate(body.fun, value, depth), instantiate(body.arg, value, depth))
    if isinstance(body, Bind):
        return Bind(
            body.binder,
            body.name,
            tuple(instantiate(e, value, depth) for e in body.restriction),
            instantiate(body.type, value, depth),
            instantiate(body.body, value, depth + 1),
        )
    return body


def abstract(t: Term, name: Name, depth: int = 0) -> Term:
    """Turn free occurrences of ``name`` into the bound index ``depth``."""
    if isinstance(t, Var):
        return Bound(depth, name.cls) if t.name == name else t
    if isinstance(t, Bound):
        return Bound(t.index + 1, t.cls) if t.index >= depth else t
    if isinstance(t, App):
        return App(abstract(t.fun, name, depth), abstract(t.arg, name, depth))
    if isinstance(t, Bind):
        return Bind(
            t.binder,
            t.name,
            tuple(abstract(e, name, depth) for e in t.restriction),
            abstract(t.type, name, depth),
            abstract(t.body, name, depth + 1),
        )
    return t


def mk_bind(binder: Binder, d: Declaration, body: Term) -> Term:
    return Bind(binder, d.subject, d.restriction, d.type, abstract(body, d.subject))


def lam(d: Declaration, body: Term) -> Term:
    return mk_bind(Binder.LAM, d, body)


def pi(d: Declaration, body: Term) -> Term:
    return mk_bind(Binder.PI, d, body)


def open_bind(b: Bind, name: Name | None = None) -> tuple[Declaration, Term]:
    """Split a binder into a declaration with a fresh subject and the opened body."""
    if name is None:
        name = b.name.fresh()
    return Declaration(name, b.restriction, b.type), instantiate(b.body, Var(name))


def apply(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list[Term]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def uses_bound(t: Term, index: int = 0) -> bool:
    if isinstance(t, Bound):
        return t.index == index
    if isinstance(t, App):
        return uses_bound(t.fun, index) or uses_bound(t.arg, index)
    if isinstance(t, Bind):
        return (
            any(uses_bound(e, index) for e in t.restriction)
            or uses_bound(t.type, index)
            or uses_bound(t.body, index + 1)
        )
    return False


def arrow(a: Term, b: Term) -> Term:
    """``a -> b``: a Pi whose subject does not occur in ``b``."""
    name = Name("_", type_as_sort(a))
    return Bind(Binder.PI, name, (), a, shift(b, 1))


def size(t: Term) -> int:
    n = 0
    stack = [t]
    while stack:
        t = stack.pop()
        n += 1
        if isinstance(t, App):
            stack.append(t.fun)
            stack.append(t.arg)
        elif isinstance(t, Bind):
            stack.extend(t.restriction)
            stack.append(t.type)
            stack.append(t.body)
    return n


# --- free variables and substitution -----------------------------------------


def _names(t: Term) -> Iterator[Name]:
    stack = [t]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            yield t.name
        elif isinstance(t, App):
            stack.append(t.fun)
            stack.append(t.arg)
        elif isinstance(t, Bind):
            stack.extend(t.restriction)
            stack.append(t.type)
            stack.append(t.body)


def _pure_names(m: PureTerm) -> Iterator[Name]:
    stack = [m]
    while stack:
        m = stack.pop()
        if isinstance(m, PVar):
            yield m.name
        elif isinstance(m, PApp):
            stack.append(m.fun)
            stack.append(m.arg)
        elif isinstance(m, PLam):
            stack.append(m.body)


def free_vars(x: SyntaxEntity) -> frozenset[Name]:
    """Free names of a term, pure term, declaration, restriction or context.

    For a context, names declared by an earlier entry are not free in later ones.
    """
    if isinstance(x, Term):
        return frozenset(_names(x))
    if isinstance(x, PureTerm):
        return frozenset(_pure_names(x))
    if isinstance(x, Declaration):
        return free_vars(x.type) | free_vars(x.restriction)
    if isinstance(x, RestrictedDeclaration):
        return free_vars(x.restriction)
    if isinstance(x, tuple):
        out: set[Name] = set()
        declared: set[Name] = set()
        for item in x:
            out |= free_vars(item) - declared
            if isinstance(item, (Declaration, RestrictedDeclaration)):
                declared.add(item.subject)
        return frozenset(out)
    raise TypeError(f"not a syntax entity: {x!r}")


def _subst_term(t: Term, name: Name, s: Term, depth: int) -> Term:
    if isinstance(t, Var):
        return shift(s, depth) if t.name == name else t
    if isinstance(t, App):
        return App(_subst_term(t.fun, name, s, depth), _subst_term(t.arg, name, s, depth))
    if isinstance(t, Bind):
        return Bind(
            t.binder,
            t.name,
            tuple(_subst_term(e, name, s, depth) for e in t.restriction),
            _subst_term(t.type, name, s, depth),
            _subst_term(t.body, name, s, depth + 1),
        )
    return t


def substitute(x: SyntaxEntity, name: Name, s: Term) -> SyntaxEntity:
    """Capture-avoiding ``x[name := s]``, reaching into declaration types and restrictions."""
    if isinstance(x, Term):
        if name not in free_vars(x):
            return x
        return _subst_term(x, name, s, 0)
    if isinstance(x, Declaration):
        return Declaration(x.subject, substitute(x.restriction, name, s), substitute(x.type, name, s))
    if isinstance(x, RestrictedDeclaration):
        return RestrictedDeclaration(x.subject, substitute(x.restriction, name, s))
    if isinstance(x, tuple):
        return tuple(substitute(item, name, s) for item in x)
    raise TypeError(f"cannot substitute into {x!r}")


def alpha_eq(a, b) -> bool:
    # bound variables are nameless, so alpha-equivalence is equality
    return a == b


def rdec_extract(ctx: Context) -> RestrictedContext:
    return tuple(RestrictedDeclaration(d.subject, d.restriction) for d in ctx if d.restriction)


def dom(ctx) -> frozenset[Name]:
    return frozenset(d.subject for d in ctx)


# --- pure term machinery ------------------------------------------------------


def pure_shift(m: PureTerm, by: int, cutoff: int = 0) -> PureTerm:
    if by == 0:
        return m
    if isinstance(m, PBound):
        return PBound(m.index + by) if m.index >= cutoff else m
    if isinstance(m, PApp):
        return PApp(pure_shift(m.fun, by, cutoff), pure_shift(m.arg, by, cutoff))
    if isinstance(m, PLam):
        return PLam(m.name, pure_shift(m.body, by, cutoff + 1))
    return m


def pure_instantiate(body: PureTerm, value: PureTerm, depth: int = 0) -> PureTerm:
    if isinstance(body, PBound):
        if body.index == depth:
            return pure_shift(value, depth)
        if body.index > depth:
            return PBound(body.index - 1)
        return body
    if isinstance(body, PApp):
        return PApp(pure_instantiate(body.fun, value, depth), pure_instantiate(body.arg, value, depth))
    if isinstance(body, PLam):
        return PLam(body.name, pure_instantiate(body.body, value, depth + 1))
    return body


def pure_abstract(m: PureTerm, name: Name, depth: int = 0) -> PureTerm:
    if isinstance(m, PVar):
        return PBound(depth) if m.name == name else m
    if isinstance(m, PBound):
        return PBound(m.index + 1) if m.index >= depth else m
    if isinstance(m, PApp):
        return PApp(pure_abstract(m.fun, name, depth), pure_abstract(m.arg, name, depth))
    if isinstance(m, PLam):
        return PLam(m.name, pure_abstract(m.body, name, depth + 1))
    return m


def plam(name: Name, body: PureTerm) -> PureTerm:
    return PLam(name, pure_abstract(body, name))


def papply(head: PureTerm, *args: PureTerm) -> PureTerm:
    for a in args:
        head = PApp(head, a)
    return head


def pure_size(m: PureTerm) -> int:
    if isinstance(m, PApp):
        return 1 + pure_size(m.fun) + pure_size(m.arg)
    if isinstance(m, PLam):
        return 1 + pure_size(m.body)
    return 1
