import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import Y, Y1, _type_expr, draw_chooser, queries, random_query, rng_chooser
from nucube.derivation import enumerate_satisfies
from nucube.encoding import P12, P22, Z2, polymorphic_identity, proj_restriction, satisfaction_corpus, urzyczyn
from nucube.errors import FuelExhausted
from nucube.restriction import SatisfactionCache, convertible_under, satisfies
from nucube.rewriting import Fuel
from nucube.terms import App, Name, RestrictedDeclaration, Sort, Var, apply, arrow, free_vars, pi, rdec_extract
from nucube.text import parse_term

FUEL = Fuel()


class TestExamples:
    def test_projection_is_a_projection(self):
        r = satisfies((), P12, (P12, P22))
        assert r.holds and r.branch_count == 1 and r.witnesses == (1,)

    def test_pi_u_inhabits_v(self):
        e1 = polymorphic_identity()
        r = satisfies(rdec_extract((e1.dz2,)), e1.pi_u, (e1.V,))
        assert r.holds and r.branch_count == 2 and r.witnesses == (1, 1)

    def test_f_against_s_to_s(self):
        u = urzyczyn()
        assert satisfies(rdec_extract((u.dz3,)), u.F, (arrow(u.S, u.S),)).holds

    def test_distinct_normal_forms(self):
        r = satisfies((), Y, (arrow(Y, Y),))
        assert not r.holds and r.witnesses == (None,)

    def test_convertible_under_plain_beta(self):
        assert convertible_under((), apply(P12, Y, Y1), Y).holds

    def test_o_unfolds(self):
        u = urzyczyn()
        target = pi(u.dz3, apply(u.z2, u.B, u.A))
        assert convertible_under(rdec_extract((u.dz2,)), u.O, target).holds

    def test_reflexive_variable(self):
        assert convertible_under((), Y, Y).holds

    @pytest.mark.parametrize("name", sorted(satisfaction_corpus()))
    def test_corpus_queries_hold(self, name):
        gamma, b, rho = satisfaction_corpus()[name]
        assert satisfies(gamma, b, rho).holds
        assert enumerate_satisfies(gamma, b, rho, FUEL)

    def test_branch_matters(self):
        # z in {P12, P22} |- z y y1 in {y} fails on the second branch
        gamma = (RestrictedDeclaration(Z2.name, proj_restriction(2)),)
        r = satisfies(gamma, apply(Var(Z2.name), Y, Y1), (Y,), audit=True)
        assert not r.holds and r.branch_count == 2 and r.witnesses == (1, None)

    def test_short_circuit_without_audit(self):
        gamma = (RestrictedDeclaration(Z2.name, (P22, P12)),)
        r = satisfies(gamma, apply(Var(Z2.name), Y, Y1), (Y,))
        assert not r.holds and r.branch_count == 1


class TestErrors:
    def test_empty_restriction(self):
        with pytest.raises(ValueError):
            satisfies((), Y, ())

    def test_duplicate_subject(self):
        g = RestrictedDeclaration(Z2.name, (P12,))
        with pytest.raises(ValueError):
            satisfies((g, g), apply(Var(Z2.name), Y, Y), (Y,))

    def test_fuel_exhaustion_propagates_when_undecided(self):
        half = parse_term("fn x : y. x x")
        with pytest.raises(FuelExhausted):
            satisfies((), App(half, half), (Y,), Fuel(max_steps=50))

    def test_match_found_despite_a_diverging_candidate(self):
        half = parse_term("fn x : y. x x")
        r = satisfies((), Y, (App(half, half), Y), Fuel(max_steps=50))
        assert r.holds and r.witnesses == (2,)


@given(queries())
def test_agrees_with_brute_force(q):
    gamma, b, rho = q
    expected = enumerate_satisfies(gamma, b, rho, FUEL)
    assert satisfies(gamma, b, rho).holds == expected
    assert satisfies(gamma, b, rho, audit=True).holds == expected


@given(queries())
def test_audit_explores_every_branch(q):
    gamma, b, rho = q
    r = satisfies(gamma, b, rho, audit=True)
    assert r.branch_count == math.prod(len(g.restriction) for g in gamma)
    assert len(r.witnesses) == r.branch_count
    assert r.holds == all(w is not None for w in r.witnesses)


@given(queries(), st.data())
def test_reflexivity(q, data):
    gamma, _, _ = q
    ch = draw_chooser(data.draw)
    rho = tuple(_type_expr(ch, [], 2) for _ in range(1 + ch(3)))
    i = ch(len(rho))
    assert satisfies(gamma, rho[i], rho).holds


@given(queries(), st.data())
def test_weakening_with_an_unused_entry(q, data):
    gamma, b, rho = q
    w = RestrictedDeclaration(Name("w_unused", Sort.BOX), (P12, P22))
    k = data.draw(st.integers(0, len(gamma)))
    weakened = gamma[:k] + (w,) + gamma[k:]
    assert satisfies(weakened, b, rho).holds == satisfies(gamma, b, rho).holds


@given(queries(), st.data())
def test_permuting_independent_entries(q, data):
    gamma, b, rho = q
    if len(gamma) < 2:
        return
    k = data.draw(st.integers(0, len(gamma) - 2))
    g1, g2 = gamma[k], gamma[k + 1]
    if g1.subject in free_vars(g2.restriction) or g2.subject in free_vars(g1.restriction):
        return
    swapped = gamma[:k] + (g2, g1) + gamma[k + 2 :]
    verdict = satisfies(swapped, b, rho).holds
    assert verdict == satisfies(gamma, b, rho).holds
    assert verdict == enumerate_satisfies(swapped, b, rho, FUEL)


def test_cache_returns_the_same_report():
    ch = rng_chooser(random.Random(3))
    cache = SatisfactionCache()
    for _ in range(50):
        gamma, b, rho = random_query(ch)
        first = satisfies(gamma, b, rho, cache=cache)
        assert satisfies(gamma, b, rho, cache=cache) is first
        assert first == satisfies(gamma, b, rho)
    assert len(cache) >= 50


def test_report_json():
    r = satisfies((), P12, (P22, P12))
    assert r.to_json() == {"holds": True, "branch_count": 1, "witnesses": [2]}
