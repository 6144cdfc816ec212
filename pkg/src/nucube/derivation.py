"""Typing derivations: the tree type, a rule-by-rule replay validator and JSON traces.

The replay validator is deliberately independent of the checker: it never
synthesises anything, it only confirms that each node's conclusion follows
from its premises by the named typing rule, and it decides restriction
premises by enumerating every total choice for the restricted variables
rather than by the recursive satisfaction procedure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import ReplayError
from .restriction import SatisfactionReport
from .rewriting import Fuel, beta_equal, default_fuel
from .systems import Mode, SystemId, rule_set_of
from .terms import (
    BOX,
    STAR,
    Bind,
    Binder,
    App,
    Declaration,
    Name,
    SortTerm,
    Term,
    Var,
    free_vars,
    instantiate,
    rdec_extract,
    substitute,
)
from .text import parse_context, parse_term, print_declaration, print_term

RULES = ("axiom", "weak", "start", "pi", "lambda", "app", "conv")


@dataclass(eq=False)
class Derivation:
    rule: str
    context: tuple[Declaration, ...]
    subject: Term
    type: Term
    premises: tuple["Derivation", ...] = ()
    satisfaction: Optional[SatisfactionReport] = None

    def nodes(self) -> list["Derivation"]:
        """Distinct nodes, premises before conclusions."""
        seen: dict[int, Derivation] = {}
        order: list[Derivation] = []
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in seen and not expanded:
                continue
            if expanded:
                order.append(node)
                continue
            seen[id(node)] = node
            stack.append((node, True))
            for p in reversed(node.premises):
                if id(p) not in seen:
                    stack.append((p, False))
        return order

    def judgement(self) -> str:
        from .text import print_context

        ctx = print_context(self.context) or "ε"
        return f"{ctx} ⊢ {print_term(self.subject)} : {print_term(self.type)}"


# --- independent restriction oracle --------------------------------------------


def enumerate_satisfies(gamma, b: Term, rho, fuel: Fuel) -> bool:
    """``gamma ⊩ b rho`` by trying every total choice for the restricted variables."""
    gamma = tuple(gamma)
    for choice in itertools.product(*(range(len(g.restriction)) for g in gamma)):
        bb, rr = b, tuple(rho)
        remaining = list(gamma)
        for k, idx in enumerate(choice):
            x, value = remaining[k].subject, remaining[k].restriction[idx]
            bb = substitute(bb, x, value)
            rr = substitute(rr, x, value)
            remaining[k + 1 :] = [substitute(g, x, value) for g in remaining[k + 1 :]]
        if not any(beta_equal(bb, a, fuel) for a in rr):
            return False
    return True


# --- replay ----------------------------------------------------------------------------


def _fail(node: Derivation, why: str):
    raise ReplayError(f"{node.rule} node {node.judgement()}: {why}")


def _premise_count(node, n):
    if len(node.premises) != n:
        _fail(node, f"expected {n} premises, found {len(node.premises)}")


def _sort_of_type(node, t: Term):
    if not isinstance(t, SortTerm):
        _fail(node, f"{print_term(t)} is not a sort")
    return t.sort


def replay(der: Derivation, system: SystemId, fuel: Fuel | None = None) -> int:
    """Validate every node of ``der``; returns the number of nodes checked."""
    fuel = fuel or default_fuel()
    rules = rule_set_of(system)
    nu = system.mode is Mode.NU
    nodes = der.nodes()
    for node in nodes:
        _check_node(node, rules, nu, fuel)
    return len(nodes)


def _check_node(node: Derivation, rules, nu: bool, fuel: Fuel) -> None:
    ctx, subj, ty, ps = node.context, node.subject, node.type, node.premises
    if node.rule == "axiom":
        _premise_count(node, 0)
        if ctx or subj != STAR or ty != BOX:
            _fail(node, "axiom is exactly ε ⊢ * : @")
    elif node.rule == "weak":
        _premise_count(node, 2)
        if not ctx:
            _fail(node, "weakening needs a nonempty context")
        if ps[0].context != ctx:
            _fail(node, "first premise must live in the weakened context")
        if ps[1].context != ctx[:-1] or ps[1].subject != subj or ps[1].type != ty:
            _fail(node, "second premise must be the same judgement in the shorter context")
    elif node.rule == "start":
        if not ctx:
            _fail(node, "start needs a nonempty context")
        d = ctx[-1]
        prefix = ctx[:-1]
        if d.subject in {e.subject for e in prefix}:
            _fail(node, f"{d.subject} already declared")
        if d.restriction and not nu:
            _fail(node, "restricted declarations are not part of the lambda-cube")
        if subj != Var(d.subject) or ty != d.type:
            _fail(node, "conclusion must be x : A for the last declaration")
        _premise_count(node, 1 + len(d.restriction))
        p0 = ps[0]
        if p0.context != prefix or p0.subject != d.type:
            _fail(node, "first premise must type the declared type")
        if _sort_of_type(node, p0.type) is not d.subject.cls:
            _fail(node, "variable class differs from the sort of its type")
        for j, (p, elem) in enumerate(zip(ps[1:], d.restriction), 1):
            if p.context != prefix or p.subject != elem or p.type != d.type:
                _fail(node, f"premise for restriction element {j} is wrong")
    elif node.rule == "pi":
        _premise_count(node, 2)
        if not (isinstance(subj, Bind) and subj.binder is Binder.PI):
            _fail(node, "subject is not a Pi")
        body_p, dom_p = ps
        s = _sort_of_type(node, ty)
        _check_binder_premise(node, subj, body_p, ctx)
        if body_p.type != ty:
            _fail(node, "body premise must have the conclusion's sort")
        if dom_p.context != ctx or dom_p.subject != subj.type:
            _fail(node, "domain premise must type the declared type")
        s2 = _sort_of_type(node, dom_p.type)
        if (s2, s) not in rules:
            _fail(node, f"rule ({s2}, {s}) not in the rule set")
    elif node.rule == "lambda":
        _premise_count(node, 2)
        if not (isinstance(subj, Bind) and subj.binder is Binder.LAM):
            _fail(node, "subject is not a lambda")
        if not (isinstance(ty, Bind) and ty.binder is Binder.PI):
            _fail(node, "type is not a Pi")
        if ty.restriction != subj.restriction or ty.type != subj.type:
            _fail(node, "lambda and Pi must carry the same declaration")
        body_p, pi_p = ps
        name = _check_binder_premise(node, subj, body_p, ctx)
        if body_p.type != instantiate(ty.body, Var(name)):
            _fail(node, "body premise type is not the Pi body")
        if pi_p.context != ctx or pi_p.subject != ty:
            _fail(node, "second premise must type the Pi")
        _sort_of_type(node, pi_p.type)
    elif node.rule == "app":
        _premise_count(node, 2)
        if not isinstance(subj, App):
            _fail(node, "subject is not an application")
        f_p, a_p = ps
        if f_p.context != ctx or f_p.subject != subj.fun:
            _fail(node, "first premise must type the function")
        pity = f_p.type
        if not (isinstance(pity, Bind) and pity.binder is Binder.PI):
            _fail(node, "function type is not a Pi")
        if a_p.context != ctx or a_p.subject != subj.arg or a_p.type != pity.type:
            _fail(node, "second premise must type the argument with the domain")
        if ty != instantiate(pity.body, subj.arg):
            _fail(node, "conclusion type is not the instantiated codomain")
        if pity.restriction:
            if not nu:
                _fail(node, "restricted Pi in the lambda-cube")
            if not enumerate_satisfies(rdec_extract(ctx), subj.arg, pity.restriction, fuel):
                _fail(node, "argument violates the restriction")
    elif node.rule == "conv":
        _premise_count(node, 2)
        a_p, c_p = ps
        if a_p.context != ctx or a_p.subject != subj:
            _fail(node, "first premise must type the same subject")
        if c_p.context != ctx or c_p.subject != ty:
            _fail(node, "second premise must sort the new type")
        _sort_of_type(node, c_p.type)
        gamma = rdec_extract(ctx)
        if not nu and gamma:
            _fail(node, "restricted declarations in the lambda-cube")
        if not enumerate_satisfies(gamma, a_p.type, (ty,), fuel):
            _fail(node, "types are not convertible")
    else:
        _fail(node, f"unknown rule {node.rule!r}")


def _check_binder_premise(node, binder: Bind, premise: Derivation, ctx) -> Name:
    if len(premise.context) != len(ctx) + 1 or premise.context[:-1] != ctx:
        _fail(node, "binder premise must extend the context by one declaration")
    d = premise.context[-1]
    if d.restriction != binder.restriction or d.type != binder.type or d.subject.cls is not binder.cls:
        _fail(node, "binder premise declares a different variable")
    if d.subject in free_vars(binder):
        _fail(node, "binder premise variable is not fresh")
    if premise.subject != instantiate(binder.body, Var(d.subject)):
        _fail(node, "binder premise subject is not the opened body")
    return d.subject


# --- JSON traces ---------------------------------------------------------------------------

TRACE_FORMAT = "nucube-derivation/1"

TRACE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["format", "root", "nodes"],
    "properties": {
        "format": {"const": TRACE_FORMAT},
        "root": {"type": "integer", "minimum": 0},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "rule", "context", "subject", "type", "premises", "satisfaction"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer", "minimum": 0},
                    "rule": {"enum": list(RULES)},
                    "context": {"type": "array", "items": {"type": "string"}},
                    "subject": {"type": "string"},
                    "type": {"type": "string"},
                    "premises": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    "satisfaction": {
                        "oneOf": [
                            {"type": "null"},
                            {
                                "type": "object",
                                "required": ["holds", "branch_count", "witnesses"],
                                "properties": {
                                    "holds": {"type": "boolean"},
                                    "branch_count": {"type": "integer", "minimum": 0},
                                    "witnesses": {
                                        "type": "array",
                                        "items": {"type": ["integer", "null"]},
                                    },
                                },
                            },
                        ]
                    },
                },
            },
        },
    },
}


def _renaming(nodes) -> dict[Name, str]:
    # opened binders carry fresh indices; number them per document so the
    # output does not depend on the global counter
    rename: dict[Name, str] = {}
    for node in nodes:
        for d in node.context:
            n = d.subject
            if n.index and n not in rename:
                rename[n] = f"{n.base}'{len(rename) + 1}"
    return rename


def to_json(der: Derivation) -> dict:
    nodes = der.nodes()
    ids = {id(n): i for i, n in enumerate(nodes)}
    rename = _renaming(nodes)
    printed: dict[Declaration, str] = {}

    def decl(d: Declaration) -> str:
        if d not in printed:
            printed[d] = print_declaration(d, rename)
        return printed[d]

    out = []
    for i, n in enumerate(nodes):
        out.append(
            {
                "id": i,
                "rule": n.rule,
                "context": [decl(d) for d in n.context],
                "subject": print_term(n.subject, rename),
                "type": print_term(n.type, rename),
                "premises": [ids[id(p)] for p in n.premises],
                "satisfaction": None if n.satisfaction is None else n.satisfaction.to_json(),
            }
        )
    return {"format": TRACE_FORMAT, "root": ids[id(der)], "nodes": out}


def from_json(doc: dict) -> Derivation:
    """Rebuild a derivation from a JSON trace (the inverse of ``to_json`` up to alpha)."""
    built: dict[int, Derivation] = {}
    for entry in doc["nodes"]:
        ctx = parse_context(", ".join(entry["context"]))
        sat = entry["satisfaction"]
        built[entry["id"]] = Derivation(
            entry["rule"],
            ctx,
            parse_term(entry["subject"], ctx),
            parse_term(entry["type"], ctx),
            tuple(built[p] for p in entry["premises"]),
            None if sat is None else SatisfactionReport(sat["holds"], sat["branch_count"], tuple(sat["witnesses"])),
        )
    return built[doc["root"]]
