"""Beta reduction on terms and on pure lambda terms.

Steps are leftmost-outermost. Reduction reaches into declaration types and
restriction elements as well as bodies; a finite-set restriction on a
lambda does not block contraction.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union

from .errors import FuelExhausted
from .terms import (
    App,
    Bind,
    Binder,
    PApp,
    PLam,
    PureTerm,
    Term,
    instantiate,
    pure_instantiate,
    pure_size,
    size,
)

Path = tuple[int, ...]


@dataclass(frozen=True)
class Fuel:
    max_steps: int = 100_000
    max_size: int = 1_000_000

    def __post_init__(self):
        if self.max_steps <= 0 or self.max_size <= 0:
            raise ValueError("fuel budgets must be strictly positive")


def default_fuel() -> Fuel:
    env = os.environ.get("NUCUBE_FUEL")
    return Fuel(int(env)) if env else Fuel()


@dataclass(frozen=True)
class ReductionOutcome:
    result: Union[Term, PureTerm]
    steps_used: int
    normal: bool


# Children of a Bind are numbered restriction elements first, then the
# type, then the body; an App has the function at 0 and the argument at 1.


def _step(t: Term) -> Optional[tuple[Term, Path]]:
    if isinstance(t, App):
        if isinstance(t.fun, Bind) and t.fun.binder is Binder.LAM:
            return instantiate(t.fun.body, t.arg), ()
        r = _step(t.fun)
        if r is not None:
            return App(r[0], t.arg), (0,) + r[1]
        r = _step(t.arg)
        if r is not None:
            return App(t.fun, r[0]), (1,) + r[1]
        return None
    if isinstance(t, Bind):
        rho = t.restriction
        for i, e in enumerate(rho):
            r = _step(e)
            if r is not None:
                new_rho = rho[:i] + (r[0],) + rho[i + 1 :]
                return Bind(t.binder, t.name, new_rho, t.type, t.body), (i,) + r[1]
        r = _step(t.type)
        if r is not None:
            return Bind(t.binder, t.name, rho, r[0], t.body), (len(rho),) + r[1]
        r = _step(t.body)
        if r is not None:
            return Bind(t.binder, t.name, rho, t.type, r[0]), (len(rho) + 1,) + r[1]
    return None


def beta_step(t: Term) -> Optional[Term]:
    """One leftmost-outermost beta step, or ``None`` when ``t`` is normal."""
    r = _step(t)
    return None if r is None else r[0]


def beta_step_traced(t: Term) -> Optional[tuple[Term, Path]]:
    return _step(t)


def is_normal(t: Term) -> bool:
    return _step(t) is None


def all_beta_steps(t: Term) -> Iterator[tuple[Path, Term]]:
    """Every one-step reduct of ``t``, one per redex position."""
    if isinstance(t, App):
        if isinstance(t.fun, Bind) and t.fun.binder is Binder.LAM:
            yield (), instantiate(t.fun.body, t.arg)
        for p, f in all_beta_steps(t.fun):
            yield (0,) + p, App(f, t.arg)
        for p, a in all_beta_steps(t.arg):
            yield (1,) + p, App(t.fun, a)
    elif isinstance(t, Bind):
        rho = t.restriction
        for i, e in enumerate(rho):
            for p, e2 in all_beta_steps(e):
                yield (i,) + p, Bind(t.binder, t.name, rho[:i] + (e2,) + rho[i + 1 :], t.type, t.body)
        for p, ty in all_beta_steps(t.type):
            yield (len(rho),) + p, Bind(t.binder, t.name, rho, ty, t.body)
        for p, b in all_beta_steps(t.body):
            yield (len(rho) + 1,) + p, Bind(t.binder, t.name, rho, t.type, b)


TraceFn = Callable[[int, Path, int, int], None]


def _run(t, step, measure, fuel: Fuel, trace: Optional[TraceFn], strict: bool) -> ReductionOutcome:
    steps = 0
    current = t
    cur_size = measure(current)
    while True:
        r = step(current)
        if r is None:
            return ReductionOutcome(current, steps, True)
        if steps >= fuel.max_steps:
            if strict:
                raise FuelExhausted(current, steps)
            return ReductionOutcome(current, steps, False)
        nxt, path = r
        steps += 1
        new_size = measure(nxt)
        if trace is not None:
            trace(steps, path, cur_size, new_size)
        current, cur_size = nxt, new_size
        if cur_size > fuel.max_size:
            if strict:
                raise FuelExhausted(current, steps, "size budget")
            return ReductionOutcome(current, steps, False)


def normalize(t: Term, fuel: Fuel | None = None, trace: Optional[TraceFn] = None, strict: bool = True) -> ReductionOutcome:
    """Reduce to beta normal form within ``fuel``.

    Raises ``FuelExhausted`` (carrying the partial result) when the budget
    runs out, unless ``strict`` is false, in which case the outcome is
    returned with ``normal=False``.
    """
    return _run(t, _step, size, fuel or default_fuel(), trace, strict)


def whnf(t: Term, fuel: Fuel | None = None) -> Term:
    """Weak head normal form: contract head redexes only."""
    fuel = fuel or default_fuel()
    args: list[Term] = []
    steps = 0
    while True:
        while isinstance(t, App):
            args.append(t.arg)
            t = t.fun
        if isinstance(t, Bind) and t.binder is Binder.LAM and args:
            if steps >= fuel.max_steps:
                raise FuelExhausted(t, steps)
            t = instantiate(t.body, args.pop())
            steps += 1
            continue
        while args:
            t = App(t, args.pop())
        return t


def beta_equal(a: Term, b: Term, fuel: Fuel | None = None) -> bool:
    """Decide ``a =β b`` by comparing normal forms (fuel-bounded)."""
    if a == b:
        return True
    fuel = fuel or default_fuel()
    na = normalize(a, fuel).result
    nb = normalize(b, fuel).result
    return na == nb


# --- pure terms ------------------------------------------------------------------


def _ube_step(m: PureTerm) -> Optional[tuple[PureTerm, Path]]:
    if isinstance(m, PApp):
        if isinstance(m.fun, PLam):
            return pure_instantiate(m.fun.body, m.arg), ()
        r = _ube_step(m.fun)
        if r is not None:
            return PApp(r[0], m.arg), (0,) + r[1]
        r = _ube_step(m.arg)
        if r is not None:
            return PApp(m.fun, r[0]), (1,) + r[1]
        return None
    if isinstance(m, PLam):
        r = _ube_step(m.body)
        if r is not None:
            return PLam(m.name, r[0]), (0,) + r[1]
    return None


def ube_step(m: PureTerm) -> Optional[PureTerm]:
    r = _ube_step(m)
    return None if r is None else r[0]


def normalize_pure(
    m: PureTerm, fuel: Fuel | None = None, trace: Optional[TraceFn] = None, strict: bool = True
) -> ReductionOutcome:
    return _run(m, _ube_step, pure_size, fuel or default_fuel(), trace, strict)
