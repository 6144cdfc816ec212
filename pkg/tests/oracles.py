"""Independent reference implementations used as test oracles.

Terms are converted to a plain named representation (nested tuples with
string binder names) and compared or substituted there with the textbook
algorithms: alpha-equivalence by simultaneous binder maps, and
substitution with renaming on capture. None of this shares code with the
locally nameless kernel.
"""

from __future__ import annotations

import itertools

from nucube.terms import App, Bind, Bound, PApp, PBound, PLam, PVar, SortTerm, Term, Var

_counter = itertools.count()


def _free_key(name) -> str:
    return f"{name.base}#{name.cls.value}#{name.index}"


def to_named(t: Term, names=None, scope: tuple[str, ...] = ()):
    """Named copy of ``t``; ``names`` supplies binder names (default: globally unique)."""
    names = names or (lambda: f"v{next(_counter)}")
    if isinstance(t, SortTerm):
        return ("sort", t.sort.value)
    if isinstance(t, Var):
        return ("var", _free_key(t.name))
    if isinstance(t, Bound):
        return ("var", scope[len(scope) - 1 - t.index])
    if isinstance(t, App):
        return ("app", to_named(t.fun, names, scope), to_named(t.arg, names, scope))
    if isinstance(t, Bind):
        x = names()
        rho = tuple(to_named(e, names, scope) for e in t.restriction)
        ty = to_named(t.type, names, scope)
        # the class is part of the variable's identity, so it tags the binder
        tag = f"{t.binder.value}/{t.cls.value}"
        return ("bind", tag, x, rho, ty, to_named(t.body, names, scope + (x,)))
    raise TypeError(t)


def named_free(n) -> set[str]:
    tag = n[0]
    if tag == "sort":
        return set()
    if tag == "var":
        return {n[1]}
    if tag == "app":
        return named_free(n[1]) | named_free(n[2])
    _, _, x, rho, ty, body = n
    out = named_free(ty) | (named_free(body) - {x})
    for e in rho:
        out |= named_free(e)
    return out


def named_alpha(a, b, left=None, right=None, depth=0) -> bool:
    left = left or {}
    right = right or {}
    if a[0] != b[0]:
        return False
    tag = a[0]
    if tag == "sort":
        return a == b
    if tag == "var":
        la, rb = left.get(a[1]), right.get(b[1])
        if la is None and rb is None:
            return a[1] == b[1]
        return la == rb
    if tag == "app":
        return named_alpha(a[1], b[1], left, right, depth) and named_alpha(a[2], b[2], left, right, depth)
    _, ba, xa, rhoa, tya, bodya = a
    _, bb, xb, rhob, tyb, bodyb = b
    if ba != bb or len(rhoa) != len(rhob):
        return False
    if not all(named_alpha(p, q, left, right, depth) for p, q in zip(rhoa, rhob)):
        return False
    if not named_alpha(tya, tyb, left, right, depth):
        return False
    return named_alpha(bodya, bodyb, {**left, xa: depth}, {**right, xb: depth}, depth + 1)


def named_subst(n, x: str, s):
    """Textbook capture-avoiding substitution with renaming."""
    tag = n[0]
    if tag == "sort":
        return n
    if tag == "var":
        return s if n[1] == x else n
    if tag == "app":
        return ("app", named_subst(n[1], x, s), named_subst(n[2], x, s))
    _, binder, y, rho, ty, body = n
    rho = tuple(named_subst(e, x, s) for e in rho)
    ty = named_subst(ty, x, s)
    if y == x:
        return ("bind", binder, y, rho, ty, body)
    if y in named_free(s):
        z = f"r{next(_counter)}"
        body = named_subst(body, y, ("var", z))
        y = z
    return ("bind", binder, y, rho, ty, named_subst(body, x, s))


def named_key(name) -> str:
    return _free_key(name)


# pure terms


def pure_to_named(m, scope: tuple[str, ...] = ()):
    if isinstance(m, PVar):
        return ("var", _free_key(m.name))
    if isinstance(m, PBound):
        return ("var", scope[len(scope) - 1 - m.index])
    if isinstance(m, PApp):
        return ("app", pure_to_named(m.fun, scope), pure_to_named(m.arg, scope))
    if isinstance(m, PLam):
        x = f"p{next(_counter)}"
        return ("bind", "fn", x, (), ("sort", "*"), pure_to_named(m.body, scope + (x,)))
    raise TypeError(m)
