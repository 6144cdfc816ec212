"""Type erasure to pure lambda terms, and typability of pure terms."""

from __future__ import annotations

from dataclasses import dataclass

from .checker import CheckConfig, check_judgement, sort_of
from .errors import NotErasable, TypeCheckError
from .terms import (
    App,
    Bind,
    Binder,
    PApp,
    PureTerm,
    PVar,
    Sort,
    SortTerm,
    Term,
    Var,
    Name,
    degree,
    free_vars,
    open_bind,
    plam,
    substitute,
)
from .text import print_term


@dataclass(frozen=True)
class ErasureResult:
    pure: PureTerm
    dropped_nodes: int


def erase(a: Term) -> ErasureResult:
    """Strip every degree-1 argument and type-level binder from ``a``.

    Defined on the terms that can be objects: variables of class ``*``,
    applications and lambdas. Pi-terms, sorts and type variables in kept
    positions raise ``NotErasable``.
    """
    dropped = 0

    def go(t: Term) -> PureTerm:
        nonlocal dropped
        if isinstance(t, Var):
            if t.name.cls is not Sort.STAR:
                raise NotErasable(f"type variable {t.name} in an object position", t.name)
            return PVar(t.name)
        if isinstance(t, App):
            d = degree(t.arg)
            if d == 0:
                return PApp(go(t.fun), go(t.arg))
            if d == 1:
                dropped += 1
                return go(t.fun)
            raise NotErasable(f"argument {print_term(t.arg)} has degree {d}")
        if isinstance(t, Bind) and t.binder is Binder.LAM:
            d, body = open_bind(t)
            if t.cls is Sort.STAR:
                return plam(d.subject, go(body))
            dropped += 1
            return go(body)
        if isinstance(t, (Bind, SortTerm)):
            raise NotErasable(f"erasure is undefined on {print_term(t)}")
        raise NotErasable(f"cannot erase {t!r}")

    pure = go(a)
    return ErasureResult(pure, dropped)


def _annotation_names(t: Term) -> set:
    """Free names occurring in some binder's type or restriction."""
    if isinstance(t, App):
        return _annotation_names(t.fun) | _annotation_names(t.arg)
    if isinstance(t, Bind):
        out = set(free_vars(t.type))
        for e in t.restriction:
            out |= free_vars(e)
        return out | _annotation_names(t.body)
    return set()


def erase_undeclared(a: Term) -> ErasureResult:
    """Erase a term read without declarations.

    Free names default to the type class when parsed. Here a free name
    stays a type only if it occurs in some binder's annotation; every other
    free name, and any annotation name the erasure meets in an object
    position, is re-read as an object variable.
    """
    types = _annotation_names(a)
    for n in free_vars(a) - types:
        if n.cls is Sort.BOX:
            a = substitute(a, n, Var(Name(n.base, Sort.STAR, n.index)))
    while True:
        try:
            return erase(a)
        except NotErasable as exc:
            n = exc.name
            if n is None or n not in free_vars(a):
                raise
            a = substitute(a, n, Var(Name(n.base, Sort.STAR, n.index)))


def verify_typability(delta, a: Term, b: Term, target: PureTerm, cfg: CheckConfig | None = None) -> bool:
    """True iff ``delta ⊢ a : b : *`` holds and ``a`` erases to ``target``."""
    try:
        check_judgement(delta, a, b, cfg)
    except TypeCheckError:
        return False
    if sort_of(delta, a, cfg) is not Sort.STAR:
        return False
    return erase(a).pure == target
