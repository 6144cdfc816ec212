"""The restriction-satisfaction judgement ``Γ ⊩ B ρ``.

Base case (empty Γ): B must be beta-equal to some element of ρ.
Otherwise the first restricted declaration ``x ∈̄{A1..An}`` is peeled off
and the query must hold for every ``i`` after substituting ``x := Ai``
into the rest of Γ, into B and into ρ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import FuelExhausted
from .rewriting import Fuel, beta_equal, default_fuel
from .terms import RestrictedDeclaration, Term, free_vars, substitute


@dataclass(frozen=True)
class SatisfactionReport:
    """Verdict plus audit trail.

    ``witnesses`` has one entry per explored leaf: the 1-based index of the
    matching restriction element, or ``None`` for a failing leaf.
    """

    holds: bool
    branch_count: int
    witnesses: tuple[Optional[int], ...] = field(default=())

    def to_json(self) -> dict:
        return {"holds": self.holds, "branch_count": self.branch_count, "witnesses": list(self.witnesses)}


class SatisfactionCache(dict):
    """Verdict memo keyed by ``(gamma, b, rho, audit)``; keep one per checking session."""


def _leaf(b: Term, rho: tuple[Term, ...], fuel: Fuel) -> SatisfactionReport:
    exhausted = None
    for i, a in enumerate(rho, 1):
        try:
            if beta_equal(b, a, fuel):
                return SatisfactionReport(True, 1, (i,))
        except FuelExhausted as exc:
            exhausted = exc
    if exhausted is not None:
        raise exhausted
    return SatisfactionReport(False, 1, (None,))


def satisfies(
    gamma: tuple[RestrictedDeclaration, ...],
    b: Term,
    rho: tuple[Term, ...],
    fuel: Fuel | None = None,
    audit: bool = False,
    cache: SatisfactionCache | None = None,
) -> SatisfactionReport:
    """Decide ``gamma ⊩ b rho``.

    Without ``audit`` the search stops at the first failing branch; with it
    every branch is explored so ``branch_count`` is the full product of the
    restriction sizes. Raises ``FuelExhausted`` when a conversion check
    cannot be decided within ``fuel``.
    """
    if not rho:
        raise ValueError("satisfaction is only defined for a nonempty restriction")
    fuel = fuel or default_fuel()
    gamma = tuple(gamma)
    rho = tuple(rho)
    key = (gamma, b, rho, audit)
    if cache is not None and key in cache:
        return cache[key]
    result = _satisfies(gamma, b, rho, fuel, audit, cache)
    if cache is not None:
        cache[key] = result
    return result


def _satisfies(gamma, b, rho, fuel, audit, cache) -> SatisfactionReport:
    if not gamma:
        return _leaf(b, rho, fuel)
    head, tail = gamma[0], gamma[1:]
    x = head.subject
    if any(g.subject == x for g in tail):
        raise ValueError(f"{x} is declared twice in the restricted context")
    n = len(head.restriction)
    if x not in free_vars(b) | free_vars(rho) | free_vars(tail):
        # every branch asks the same question
        sub = satisfies(tail, b, rho, fuel, audit, cache)
        return SatisfactionReport(sub.holds, sub.branch_count * n, sub.witnesses * n)
    holds = True
    count = 0
    witnesses: list[Optional[int]] = []
    for a in head.restriction:
        sub = satisfies(substitute(tail, x, a), substitute(b, x, a), substitute(rho, x, a), fuel, audit, cache)
        count += sub.branch_count
        witnesses.extend(sub.witnesses)
        if not sub.holds:
            holds = False
            if not audit:
                break
    return SatisfactionReport(holds, count, tuple(witnesses))


def convertible_under(
    gamma,
    b: Term,
    c: Term,
    fuel: Fuel | None = None,
    audit: bool = False,
    cache: SatisfactionCache | None = None,
) -> SatisfactionReport:
    """``gamma ⊩ b ∈̄{c}``: the conversion premise of the typing rules."""
    return satisfies(gamma, b, (c,), fuel, audit, cache)
