"""Intersection types as restricted Pi-types, and the worked example corpus.

An intersection of the types ``A1 .. Aq`` is encoded as::

    Pi z in {P1q, .., Pqq} : *_q. z A1 .. Aq

where ``Piq`` is the type-level projection picking the i-th of q
arguments. Whatever projection is substituted for ``z``, the body reduces
to one of the ``Ai``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from types import SimpleNamespace
from typing import Sequence

from .errors import DegreeMismatch, FreshnessViolation, IndexOutOfRange
from .terms import (
    STAR,
    Declaration,
    Name,
    Sort,
    Term,
    Var,
    apply,
    arrow,
    degree,
    free_vars,
    lam,
    pi,
    rdec_extract,
    substitute,
)


# --- general abbreviations ---------------------------------------------------------


def star_k(k: int) -> Term:
    """``*_0 = *`` and ``*_{k+1} = * -> *_k``."""
    if k < 0:
        raise ValueError("k must be a natural number")
    t = STAR
    for _ in range(k):
        t = arrow(STAR, t)
    return t


def bar(a: Term, i: int = 1) -> Term:
    """``a`` with ``a -> a`` applied ``i`` times (``bar(a, 0) == a``)."""
    for _ in range(i):
        a = arrow(a, a)
    return a


def tilde(a: Term) -> Term:
    return arrow(bar(a), a)


def underline(a: Term, i: int = 1) -> Term:
    """``a -> ((a -> a) -> a)``, iterated ``i`` times."""
    for _ in range(i):
        a = arrow(a, tilde(a))
    return a


# --- pieces of the intersection encoding ----------------------------------------------


def y_name(j: int = 0) -> Name:
    return Name("y" if j == 0 else f"y{j}", Sort.BOX)


def y_declaration(j: int = 0) -> Declaration:
    return Declaration(y_name(j), (), STAR)


@lru_cache(maxsize=None)
def projection(i: int, q: int) -> Term:
    """``fn x1 : *. .. fn xq : *. xi``."""
    if q < 1 or not 1 <= i <= q:
        raise IndexOutOfRange(f"projection needs 1 <= i <= q, got i={i}, q={q}")
    xs = [Name(f"x{k}", Sort.BOX) for k in range(1, q + 1)]
    t: Term = Var(xs[i - 1])
    for x in reversed(xs):
        t = lam(Declaration(x, (), STAR), t)
    return t


def proj_restriction(q: int) -> tuple[Term, ...]:
    if q < 1:
        raise IndexOutOfRange("arity must be positive")
    return tuple(projection(i, q) for i in range(1, q + 1))


@dataclass(frozen=True)
class EncodingHandle:
    """Selects the restricted variable ``z^j_q``."""

    q: int
    j: int = 0

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if self.j < 0:
            raise ValueError("j must be a natural number")

    @property
    def name(self) -> Name:
        return Name(f"z{self.q}" if self.j == 0 else f"z{self.q}_{self.j}", Sort.BOX)


def z_declaration(handle: EncodingHandle) -> Declaration:
    return Declaration(handle.name, proj_restriction(handle.q), star_k(handle.q))


def intersect(types: Sequence[Term], handle: EncodingHandle | None = None) -> Term:
    types = list(types)
    if not types:
        raise ValueError("an intersection needs at least one component")
    handle = handle or EncodingHandle(len(types))
    if handle.q != len(types):
        raise ValueError(f"handle arity {handle.q} does not match {len(types)} components")
    for a in types:
        if degree(a) != 1:
            raise DegreeMismatch(f"intersection components must have degree 1, got {degree(a)}")
        if handle.name in free_vars(a):
            raise FreshnessViolation(f"{handle.name} occurs free in a component")
    z = handle.name
    return pi(z_declaration(handle), apply(Var(z), *types))


# --- the worked examples -------------------------------------------------------------------

Y = Var(y_name())
Z2 = EncodingHandle(2)
Z3 = EncodingHandle(3)
P12, P22 = projection(1, 2), projection(2, 2)
P13, P23, P33 = projection(1, 3), projection(2, 3), projection(3, 3)


def _obj(name: str, type_: Term) -> Declaration:
    return Declaration(Name(name, Sort.STAR), (), type_)


@lru_cache(maxsize=None)
def polymorphic_identity() -> SimpleNamespace:
    """Terms of the polymorphic-identity and self-application examples."""
    z2 = Var(Z2.name)
    dz2 = z_declaration(Z2)
    dy = y_declaration()
    U = apply(z2, Y, bar(Y))
    du = _obj("u", U)
    u = Var(du.subject)
    V = apply(z2, bar(Y), bar(Y, 2))
    W_prime = lam(dz2, lam(du, u))
    W = pi(dz2, pi(du, U))
    dw = _obj("w", W)
    w = Var(dw.subject)
    lam_u = lam(du, u)
    self_fun = lam(dw, apply(w, P22, apply(w, P12)))
    return SimpleNamespace(
        dy=dy,
        dz2=dz2,
        du=du,
        dw=dw,
        z2=z2,
        u=u,
        w=w,
        U=U,
        V=V,
        W=W,
        W_prime=W_prime,
        lam_u=lam_u,
        pi_u=pi(du, U),
        self_fun=self_fun,
        self_app=apply(self_fun, W_prime),
    )


@lru_cache(maxsize=None)
def urzyczyn() -> SimpleNamespace:
    """Every named piece of the typing of Urzyczyn's term."""
    dy = y_declaration()
    z2, z3 = Var(Z2.name), Var(Z3.name)
    dz2, dz3 = z_declaration(Z2), z_declaration(Z3)
    y = Y
    uy = underline(y)
    F = apply(z3, bar(y, 3), bar(y, 2), bar(y))
    S = apply(z3, bar(y, 2), bar(y, 1), y)
    Q = apply(z3, uy, y, uy)
    G = apply(z3, underline(y, 2), bar(y), bar(uy))
    M = apply(z3, tilde(uy), y, uy)
    B = arrow(F, arrow(S, S))
    A = arrow(Q, arrow(G, M))
    E_parts = (bar(y, 4), bar(y, 3), bar(y, 2))
    D_parts = (arrow(uy, arrow(underline(y, 2), tilde(uy))), uy, underline(y, 2))
    E = pi(dz3, B)
    D = pi(dz3, A)
    C1, C2 = bar(y, 2), tilde(uy)
    C = apply(z2, C1, C2)
    O = apply(z2, E, D)
    R_prime = arrow(O, C)
    R_parts = (arrow(E, C1), arrow(D, C2))
    R = pi(dz2, R_prime)
    dh = _obj("h", arrow(C1, arrow(C2, y)))
    dr = _obj("r", R)
    do = _obj("o", O)
    df = _obj("f", F)
    ds = _obj("s", S)
    dq = _obj("q", Q)
    dg = _obj("g", G)
    h, r, o, f, s, q, g = (Var(d.subject) for d in (dh, dr, do, df, ds, dq, dg))
    T = lam(dz3, lam(df, lam(ds, apply(f, s))))
    J = lam(dz3, lam(dq, lam(dg, apply(g, q))))
    L = apply(h, apply(r, P12, T), apply(r, P22, J))
    o_apps = (apply(o, P13), apply(o, P23), apply(o, P33))
    V = lam(dz2, lam(do, apply(*o_apps)))
    lam_r_L = lam(dr, L)
    U = apply(lam_r_L, V)
    return SimpleNamespace(**locals())


@dataclass(frozen=True)
class CorpusEntry:
    context: tuple[Declaration, ...]
    term: Term
    type: Term
    note: str = ""


def _sub(t: Term, handle: EncodingHandle, value: Term) -> Term:
    return substitute(t, handle.name, value)


@lru_cache(maxsize=None)
def corpus() -> dict[str, CorpusEntry]:
    """Every judgement of the worked examples, keyed by a short name."""
    e1 = polymorphic_identity()
    u = urzyczyn()
    dy = e1.dy
    out: dict[str, CorpusEntry] = {}

    def add(name, ctx, term, ty, note=""):
        out[name] = CorpusEntry(tuple(ctx), term, ty, note)

    # polymorphic identity
    add("id-U", (dy, e1.dz2), e1.U, STAR, "U is a type")
    add("id-u", (dy, e1.dz2, e1.du), e1.u, e1.U, "u : U")
    add("id-lam-u", (dy, e1.dz2), e1.lam_u, e1.pi_u, "fn u. u : Pi u. U")
    add("poly-id", (dy,), e1.W_prime, e1.W, "W' : W")
    add("id-V", (dy, e1.dz2), e1.V, STAR, "V is a type")
    add("id-z2", (dy, e1.dz2), e1.z2, star_k(2), "z2 : *_2")
    add("id-lam-u-isect", (dy, e1.dz2), e1.lam_u, e1.V, "fn u. u : V by restricted conversion")
    add("poly-id-isect", (dy,), e1.W_prime, pi(e1.dz2, e1.V), "W' : Pi z2. V, an intersection")
    for i in (1, 2):
        p = projection(i, 2)
        add(f"id-P{i}2", (dy,), p, star_k(2), f"P{i},2 : *_2")
        add(f"id-inst-{i}", (dy,), _sub(e1.lam_u, Z2, p), _sub(e1.V, Z2, p), "instantiated identity")
        add(
            f"id-reduced-{i}",
            (dy,),
            lam(Declaration(e1.du.subject, (), bar(Y, i - 1)), e1.u),
            bar(Y, i),
            "after subject reduction",
        )

    # self application
    ctx_yw = (dy, e1.dw)
    add("sa-W", (dy,), e1.W, STAR, "W is a type")
    add("sa-w", ctx_yw, e1.w, e1.W, "w : W")
    for i in (1, 2):
        p = projection(i, 2)
        add(f"sa-P{i}2", ctx_yw, p, star_k(2), f"P{i},2 : *_2 under w")
        add(f"sa-wP{i}", ctx_yw, apply(e1.w, p), _sub(e1.pi_u, Z2, p), f"w P{i},2 : (Pi u. U)[z2 := P{i},2]")
    add("sa-wP1-bar", ctx_yw, apply(e1.w, P12), bar(Y), "w P1,2 : bar y")
    add("sa-wP2-bar", ctx_yw, apply(e1.w, P22), arrow(bar(Y), bar(Y)), "w P2,2 : bar y -> bar y")
    add("sa-body", ctx_yw, apply(apply(e1.w, P22), apply(e1.w, P12)), bar(Y), "w P2,2 (w P1,2) : bar y")
    add("sa-fun", (dy,), e1.self_fun, arrow(e1.W, bar(Y)), "fn w. w P2,2 (w P1,2) : W -> bar y")
    add("self-app", (dy,), e1.self_app, bar(Y), "(fn w. w P2,2 (w P1,2)) W' : bar y")

    # types of Urzyczyn's term
    ctx_z3 = (dy, u.dz3)
    ctx_z2 = (dy, u.dz2)
    for key in ("F", "S", "B", "Q", "G", "M", "A"):
        add(f"urz-type-{key}", ctx_z3, getattr(u, key), STAR, f"{key} : *")
    for key in ("E", "D", "R"):
        add(f"urz-type-{key}", (dy,), getattr(u, key), STAR, f"{key} : *")
    add("urz-type-C", ctx_z2, u.C, STAR, "C : *")
    add("urz-type-R'", ctx_z2, u.R_prime, STAR, "R' : *")

    # terms of Urzyczyn's term
    ctx_z2o = (dy, u.dz2, u.do)
    ctx_hr = (dy, u.dh, u.dr)
    ctx_h = (dy, u.dh)
    add("urz-T", (dy,), u.T, u.E, "T : E")
    add("urz-J", (dy,), u.J, u.D, "J : D")
    for i, app in enumerate(u.o_apps, 1):
        add(f"urz-oP{i}", ctx_z2o, app, apply(u.z2, u.E_parts[i - 1], u.D_parts[i - 1]), f"o P{i},3 : z2 E{i} D{i}")
    add("urz-ooo", ctx_z2o, apply(*u.o_apps), u.C, "o P1,3 (o P2,3) (o P3,3) : C")
    add("urz-V", (dy,), u.V, u.R, "V : R")
    for i, p in ((1, P12), (2, P22)):
        add(f"urz-rP{i}", ctx_hr, apply(u.r, p), u.R_parts[i - 1], f"r P{i},2 : R{i}")
    add("urz-rT", ctx_hr, apply(u.r, P12, u.T), u.C1, "r P1,2 T : C1")
    add("urz-rJ", ctx_hr, apply(u.r, P22, u.J), u.C2, "r P2,2 J : C2")
    add("urz-L", ctx_hr, u.L, Y, "L : y")
    add("urz-lam-r-L", ctx_h, u.lam_r_L, pi(u.dr, Y), "fn r. L : Pi r. y")
    add("urzyczyn-U", ctx_h, u.U, Y, "Urzyczyn's term U : y")
    return out


# restriction judgements used along the way, as (gamma, subject, restriction)
@lru_cache(maxsize=None)
def satisfaction_corpus() -> dict[str, tuple]:
    e1 = polymorphic_identity()
    u = urzyczyn()
    g2 = rdec_extract((e1.dz2,))
    g3 = rdec_extract((u.dz3,))
    out = {
        "pi-u-in-V": (g2, e1.pi_u, (e1.V,)),
        "urz-F": (g3, u.F, (arrow(u.S, u.S),)),
        "urz-G": (g3, u.G, (arrow(u.Q, u.M),)),
        "urz-O": (g2, u.O, (pi(u.dz3, apply(u.z2, u.B, u.A)),)),
    }
    for i in (1, 2):
        p = projection(i, 2)
        out[f"pi-u-in-V-at-P{i}2"] = ((), _sub(e1.pi_u, Z2, p), (_sub(e1.V, Z2, p),))
        out[f"P{i}2-in-projections"] = ((), p, proj_restriction(2))
        out[f"P{i}2-in-projections-under-y"] = (rdec_extract((e1.dy,)), p, proj_restriction(2))
    return out
