"""Syntax-directed type checker for the eight systems, in lambda- or nu-mode.

Variable lookup folds (start) and (weak) together, conversion is applied
where a type is compared against an expected one, and every answer comes
with a ``Derivation`` built from the literal typing rules so it can be
replayed independently (see ``derivation.replay``).

Conversion is the restriction-aware judgement ``rdec(Δ) ⊩ B ∈̄{C}``. When a
function's type is headed by a restricted variable (``z X1 .. Xq`` with
each ``Xi`` a Pi) the checker proposes ``Π x:(z C1 .. Cq). z B1 .. Bq``
(or the shared declaration when all the ``Xi`` agree on it) and accepts it
only if that conversion holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .derivation import Derivation
from .errors import (
    AscriptionNotConvertible,
    AscriptionNotSorted,
    ClassMismatch,
    DegreeOutOfRange,
    DomainMismatch,
    DuplicateSubject,
    FsdElementIllTyped,
    NotAFunction,
    NoType,
    RestrictionInLambdaMode,
    RestrictionViolated,
    RuleNotInSystem,
    TypeCheckError,
    TypeNotASort,
    UnboundVariable,
)
from .restriction import SatisfactionCache, convertible_under, satisfies
from .rewriting import Fuel, default_fuel, whnf
from .systems import Mode, SystemId, rule_set_of
from .terms import (
    BOX,
    STAR,
    App,
    Bind,
    Binder,
    Bound,
    Declaration,
    Sort,
    SortTerm,
    Term,
    Var,
    apply,
    fresh_name,
    instantiate,
    open_bind,
    pi,
    rdec_extract,
    spine,
    type_as_sort,
)
from .text import print_term


@dataclass(frozen=True)
class CheckConfig:
    system: SystemId = field(default_factory=SystemId)
    fuel: Fuel = field(default_factory=default_fuel)
    audit: bool = False


@dataclass(frozen=True)
class Judgement:
    context: tuple[Declaration, ...]
    subject: Term
    type: Term

    def __str__(self) -> str:
        from .text import print_context

        return f"{print_context(self.context) or 'ε'} ⊢ {print_term(self.subject)} : {print_term(self.type)}"


def _is_pi(t: Term) -> bool:
    return isinstance(t, Bind) and t.binder is Binder.PI


def _restrictions_in(t: Term) -> bool:
    if isinstance(t, App):
        return _restrictions_in(t.fun) or _restrictions_in(t.arg)
    if isinstance(t, Bind):
        return bool(t.restriction) or _restrictions_in(t.type) or _restrictions_in(t.body)
    return False


class Checker:
    """One checking session: holds the memo tables for a fixed configuration."""

    def __init__(self, cfg: CheckConfig | None = None):
        self.cfg = cfg or CheckConfig()
        self.rules = rule_set_of(self.cfg.system)
        self.nu = self.cfg.system.mode is Mode.NU
        self.sat_cache = SatisfactionCache()
        self._legal: dict[tuple, Derivation] = {}
        self._lookup: dict[tuple, Derivation] = {}
        self._synth: dict[tuple, tuple[Term, Derivation]] = {}

    # input screening

    def screen(self, ctx=(), *terms: Term) -> None:
        if self.nu:
            return
        for d in ctx:
            if d.restriction or _restrictions_in(d.type):
                raise RestrictionInLambdaMode(f"declaration of {d.subject} uses a finite-set restriction")
        for t in terms:
            if _restrictions_in(t):
                raise RestrictionInLambdaMode("term uses a finite-set restriction")

    # contexts

    def legal(self, ctx) -> Derivation:
        """A derivation whose conclusion lives in ``ctx`` (so ``ctx`` is legal)."""
        ctx = tuple(ctx)
        hit = self._legal.get(ctx)
        if hit is not None:
            return hit
        if not ctx:
            der = Derivation("axiom", (), STAR, BOX)
        else:
            der = self._start(ctx[:-1], ctx[-1])
        self._legal[ctx] = der
        return der

    def _start(self, prefix, d: Declaration) -> Derivation:
        self.legal(prefix)
        if any(e.subject == d.subject for e in prefix):
            raise DuplicateSubject(f"{d.subject} is already declared")
        if d.restriction and not self.nu:
            raise RestrictionInLambdaMode(f"declaration of {d.subject} uses a finite-set restriction")
        try:
            type_der, s = self.synth_sort(prefix, d.type)
        except TypeNotASort as exc:
            raise TypeNotASort(f"the type of {d.subject} is not a type or kind: {exc}") from exc
        if s is not d.subject.cls:
            raise ClassMismatch(f"{d.subject} has class {d.subject.cls} but its type has sort {s}")
        elems = []
        for j, e in enumerate(d.restriction, 1):
            try:
                elems.append(self.check(prefix, e, d.type))
            except TypeCheckError as exc:
                raise FsdElementIllTyped(j, str(exc)) from exc
        return Derivation("start", prefix + (d,), Var(d.subject), d.type, (type_der, *elems))

    def weaken(self, der: Derivation, ctx) -> Derivation:
        for m in range(len(der.context) + 1, len(ctx) + 1):
            der = Derivation("weak", ctx[:m], der.subject, der.type, (self.legal(ctx[:m]), der))
        return der

    def lookup(self, ctx, name) -> Derivation:
        key = (ctx, name)
        hit = self._lookup.get(key)
        if hit is not None:
            return hit
        for k in range(len(ctx) - 1, -1, -1):
            if ctx[k].subject == name:
                der = self.weaken(self.legal(ctx[: k + 1]), ctx)
                break
        else:
            raise UnboundVariable(f"{name} is not declared")
        self._lookup[key] = der
        return der

    # synthesis

    def synth(self, ctx, t: Term) -> tuple[Term, Derivation]:
        ctx = tuple(ctx)
        key = (ctx, t)
        hit = self._synth.get(key)
        if hit is not None:
            return hit
        res = self._synth_uncached(ctx, t)
        self._synth[key] = res
        return res

    def _synth_uncached(self, ctx, t: Term) -> tuple[Term, Derivation]:
        if isinstance(t, SortTerm):
            if t.sort is Sort.BOX:
                raise NoType("@ has no type")
            return BOX, self.weaken(self.legal(()), ctx)
        if isinstance(t, Var):
            der = self.lookup(ctx, t.name)
            return der.type, der
        if isinstance(t, Bound):
            raise TypeCheckError("dangling bound variable")
        if isinstance(t, Bind):
            d, body = open_bind(t)
            inner = ctx + (d,)
            self.legal(inner)
            if t.binder is Binder.PI:
                dom_der, s1 = self.synth_sort(ctx, d.type)
                body_der, s2 = self.synth_sort(inner, body)
                if (s1, s2) not in self.rules:
                    raise RuleNotInSystem((s1, s2), str(self.cfg.system))
                sort = SortTerm(s2)
                return sort, Derivation("pi", ctx, t, sort, (body_der, dom_der))
            body_ty, body_der = self.synth(inner, body)
            pity = pi(d, body_ty)
            pi_der, _ = self.synth_sort(ctx, pity)
            return pity, Derivation("lambda", ctx, t, pity, (body_der, pi_der))
        if isinstance(t, App):
            _, f_der = self.synth(ctx, t.fun)
            f_der = self.expose_pi(ctx, f_der)
            pity = f_der.type
            try:
                a_der = self.check(ctx, t.arg, pity.type)
            except AscriptionNotConvertible as exc:
                raise DomainMismatch(
                    f"argument {print_term(t.arg)} does not have the domain type {print_term(pity.type)}",
                    exc.report,
                ) from exc
            report = None
            if pity.restriction:
                report = satisfies(
                    rdec_extract(ctx), t.arg, pity.restriction, self.cfg.fuel, self.cfg.audit, self.sat_cache
                )
                if not report.holds:
                    raise RestrictionViolated(
                        f"argument {print_term(t.arg)} is not allowed by the restriction of {print_term(t.fun)}",
                        report,
                    )
            result = instantiate(pity.body, t.arg)
            return result, Derivation("app", ctx, t, result, (f_der, a_der), report)
        raise TypeError(f"not a term: {t!r}")

    def synth_sort(self, ctx, t: Term) -> tuple[Derivation, Sort]:
        """Derive ``ctx ⊢ t : s`` for a sort ``s``."""
        ty, der = self.synth(ctx, t)
        if isinstance(ty, SortTerm):
            return der, ty.sort
        target = whnf(ty, self.cfg.fuel)
        if not isinstance(target, SortTerm):
            target = STAR
        if target == BOX:
            raise TypeNotASort(f"{print_term(t)} has type {print_term(ty)}")
        try:
            return self.convert(ctx, der, target, TypeNotASort), target.sort
        except TypeNotASort:
            raise TypeNotASort(f"{print_term(t)} has type {print_term(ty)}, which is not a sort") from None

    def convert(self, ctx, der: Derivation, target: Term, error=AscriptionNotConvertible) -> Derivation:
        """Close ``der`` with a (conv) step to ``target``."""
        report = convertible_under(
            rdec_extract(ctx), der.type, target, self.cfg.fuel, self.cfg.audit, self.sat_cache
        )
        if not report.holds:
            msg = f"{print_term(der.type)} is not convertible to {print_term(target)}"
            raise error(msg, report) if error is not TypeNotASort else error(msg)
        try:
            sort_der, _ = self.synth_sort(ctx, target)
        except TypeCheckError as exc:
            raise AscriptionNotSorted(f"{print_term(target)} is not well sorted: {exc}") from exc
        return Derivation("conv", ctx, der.subject, target, (der, sort_der), report)

    def expose_pi(self, ctx, der: Derivation) -> Derivation:
        if _is_pi(der.type):
            return der
        target = whnf(der.type, self.cfg.fuel)
        if not _is_pi(target):
            target = self._restricted_pi(ctx, target)
            if target is None:
                raise NotAFunction(f"{print_term(der.subject)} has type {print_term(der.type)}, not a Pi")
        try:
            return self.convert(ctx, der, target)
        except (AscriptionNotConvertible, AscriptionNotSorted) as exc:
            raise NotAFunction(f"{print_term(der.subject)} has type {print_term(der.type)}, not a Pi") from exc

    def _restricted_pi(self, ctx, t: Term) -> Optional[Term]:
        if not self.nu:
            return None
        restricted = {g.subject for g in rdec_extract(ctx)}
        head, args = spine(t)
        if not (isinstance(head, Var) and head.name in restricted and args):
            return None
        pis = [whnf(a, self.cfg.fuel) for a in args]
        if not all(_is_pi(p) for p in pis):
            return None
        first = pis[0]
        if any(p.restriction != first.restriction for p in pis):
            return None
        if all(p.type == first.type for p in pis):
            domain = first.type
            name = first.name.fresh()
        elif first.restriction:
            return None
        else:
            domain = apply(head, *(p.type for p in pis))
            try:
                name = fresh_name(first.name.base, type_as_sort(domain))
            except DegreeOutOfRange:
                return None
        bodies = [instantiate(p.body, Var(name)) for p in pis]
        return pi(Declaration(name, first.restriction, domain), apply(head, *bodies))

    # checking

    def check(self, ctx, t: Term, ty: Term) -> Derivation:
        """Derive exactly ``ctx ⊢ t : ty``."""
        ctx = tuple(ctx)
        if isinstance(t, Bind) and t.binder is Binder.LAM:
            target = ty if _is_pi(ty) else whnf(ty, self.cfg.fuel)
            if _is_pi(target) and target.restriction == t.restriction and target.type == t.type:
                name = t.name.fresh()
                d, body = open_bind(t, name)
                _, target_body = open_bind(target, name)
                inner = ctx + (d,)
                self.legal(inner)
                body_der = self.check(inner, body, target_body)
                pi_der, _ = self.synth_sort(ctx, target)
                der = Derivation("lambda", ctx, t, target, (body_der, pi_der))
                return der if target == ty else self.convert(ctx, der, ty)
        found, der = self.synth(ctx, t)
        if found == ty:
            return der
        return self.convert(ctx, der, ty)


# --- module-level API -------------------------------------------------------------------


def check_context(delta, cfg: CheckConfig | None = None) -> list[Derivation]:
    """Validate a context left to right; one derivation per prefix."""
    ch = Checker(cfg)
    delta = tuple(delta)
    ch.screen(delta)
    return [ch.legal(delta[:k]) for k in range(len(delta) + 1)]


def synth_type(delta, a: Term, cfg: CheckConfig | None = None) -> tuple[Term, Derivation]:
    ch = Checker(cfg)
    delta = tuple(delta)
    ch.screen(delta, a)
    ch.legal(delta)
    return ch.synth(delta, a)


def check_judgement(delta, a: Term, b: Term, cfg: CheckConfig | None = None) -> Derivation:
    """Derive ``delta ⊢ a : b``, raising a ``TypeCheckError`` subclass on failure."""
    ch = Checker(cfg)
    delta = tuple(delta)
    ch.screen(delta, a, b)
    ch.legal(delta)
    if b != BOX:
        try:
            ch.synth_sort(delta, b)
        except TypeCheckError as exc:
            raise AscriptionNotSorted(f"{print_term(b)} is not well sorted: {exc}") from exc
    return ch.check(delta, a, b)


def sort_of(delta, a: Term, cfg: CheckConfig | None = None) -> Optional[Sort]:
    """The sort of ``a``'s type; a term typed by ``@`` reports ``@``; ``@`` itself has none."""
    ch = Checker(cfg)
    delta = tuple(delta)
    ch.screen(delta, a)
    ch.legal(delta)
    try:
        ty, _ = ch.synth(delta, a)
    except NoType:
        return None
    if ty == BOX:
        return Sort.BOX
    _, s = ch.synth_sort(delta, ty)
    return s
