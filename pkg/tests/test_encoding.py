import importlib.util
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

import worked
from nucube.checker import check_context
from nucube.encoding import (
    P12,
    P22,
    Y,
    Z2,
    EncodingHandle,
    bar,
    corpus,
    polymorphic_identity,
    intersect,
    proj_restriction,
    projection,
    satisfaction_corpus,
    star_k,
    tilde,
    underline,
    urzyczyn,
    y_declaration,
    z_declaration,
)
from nucube.errors import DegreeMismatch, FreshnessViolation, IndexOutOfRange
from nucube.restriction import satisfies
from nucube.rewriting import normalize
from nucube.terms import (
    STAR,
    Bind,
    Bound,
    Name,
    RestrictedDeclaration,
    Sort,
    Var,
    apply,
    arrow,
    instantiate,
    pi,
    rdec_extract,
)
from nucube.text import parse_context, parse_term

ROOT = Path(__file__).resolve().parent.parent


class TestAbbreviations:
    def test_star_k(self):
        assert star_k(0) == STAR
        assert star_k(2) == parse_term("* -> * -> *")
        with pytest.raises(ValueError):
            star_k(-1)

    def test_star_k_products_do_not_bind(self):
        t = star_k(3)
        while isinstance(t, Bind):
            assert not isinstance(t.body, Bound)
            t = t.body

    def test_bar(self):
        assert bar(Y, 0) == Y
        assert bar(Y, 2) == parse_term("(y -> y) -> y -> y")

    def test_tilde(self):
        assert tilde(Y) == parse_term("(y -> y) -> y")

    def test_underline(self):
        assert underline(Y) == parse_term("y -> (y -> y) -> y")
        assert underline(Y, 0) == Y
        u = "y -> (y -> y) -> y"
        assert underline(Y, 2) == parse_term(f"({u}) -> (({u}) -> {u}) -> {u}")


class TestProjections:
    def test_unary(self):
        assert projection(1, 1) == parse_term("fn x1 : *. x1")

    def test_text(self):
        assert projection(2, 3) == parse_term("fn a : *. fn b : *. fn c : *. b")

    @pytest.mark.parametrize("i, q", [(0, 2), (3, 2), (1, 0), (-1, 1)])
    def test_out_of_range(self, i, q):
        with pytest.raises(IndexOutOfRange):
            projection(i, q)

    @pytest.mark.parametrize("q", range(1, 6))
    def test_restriction_lists_every_projection(self, q):
        rho = proj_restriction(q)
        assert len(rho) == q
        assert rho == tuple(projection(i, q) for i in range(1, q + 1))

    def test_restriction_needs_positive_arity(self):
        with pytest.raises(IndexOutOfRange):
            proj_restriction(0)

    def test_projection_selects(self):
        a, b = bar(Y), bar(Y, 2)
        assert normalize(apply(P12, a, b)).result == a
        assert normalize(apply(P22, a, b)).result == b

    def test_second_projection_is_a_projection(self):
        assert satisfies((), P22, proj_restriction(2)).holds


class TestDeclarations:
    def test_z2(self):
        d = z_declaration(EncodingHandle(2))
        assert d == polymorphic_identity().dz2
        assert d.subject == Name("z2", Sort.BOX) and d.type == star_k(2)

    def test_family_index_names(self):
        assert EncodingHandle(3, 1).name == Name("z3_1", Sort.BOX)

    def test_context_with_z3(self):
        check_context((y_declaration(), z_declaration(EncodingHandle(3))))

    def test_restricted_extraction(self):
        d = z_declaration(Z2)
        assert rdec_extract((y_declaration(), d)) == (RestrictedDeclaration(d.subject, proj_restriction(2)),)

    @pytest.mark.parametrize("q, j", [(0, 0), (2, -1)])
    def test_bad_handles(self, q, j):
        with pytest.raises(ValueError):
            EncodingHandle(q, j)


class TestIntersect:
    def test_polymorphic_identity_type(self):
        e1 = polymorphic_identity()
        t = intersect([bar(Y), bar(Y, 2)])
        assert t == pi(e1.dz2, e1.V)
        assert t.restriction == proj_restriction(2)

    def test_e_acts_as_the_intersection_of_its_rows(self):
        u = urzyczyn()
        t = intersect(list(u.E_parts), EncodingHandle(3))
        for i in (1, 2, 3):
            p = projection(i, 3)
            assert normalize(instantiate(t.body, p)).result == u.E_parts[i - 1]
            assert normalize(instantiate(u.E.body, p)).result == u.E_parts[i - 1]

    def test_unary_intersection_is_idle(self):
        t = intersect([bar(Y)])
        assert normalize(instantiate(t.body, projection(1, 1))).result == bar(Y)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            intersect([STAR, Y])

    def test_object_component(self):
        with pytest.raises(DegreeMismatch):
            intersect([Y, Var(Name("u", Sort.STAR))])

    def test_freshness(self):
        with pytest.raises(FreshnessViolation):
            intersect([Y, Var(Z2.name)])

    def test_handle_arity(self):
        with pytest.raises(ValueError):
            intersect([Y, Y], EncodingHandle(3))

    def test_empty(self):
        with pytest.raises(ValueError):
            intersect([])


# components of degree 1 over y and y1
_base = st.sampled_from([Y, Var(y_declaration(1).subject)])
_types = st.recursive(_base, lambda inner: st.builds(arrow, inner, inner), max_leaves=6)


@given(st.integers(1, 4).flatmap(lambda q: st.tuples(st.just(q), st.lists(_types, min_size=q, max_size=q))))
def test_projection_law(case):
    q, parts = case
    t = intersect(parts)
    for i in range(1, q + 1):
        assert normalize(instantiate(t.body, projection(i, q))).result == normalize(parts[i - 1]).result


@given(st.lists(_types, min_size=1, max_size=4))
def test_intersections_are_types(parts):
    worked.judge((y_declaration(), y_declaration(1)), intersect(parts), STAR, sort=Sort.BOX)


# --- worked examples ---------------------------------------------------------------------------


def _ids(v):
    return v if isinstance(v, str) else ""


@pytest.mark.parametrize("label, check", worked.polymorphic_identity_checks(), ids=_ids)
def test_polymorphic_identity_steps(label, check):
    check()


@pytest.mark.parametrize("label, check", worked.self_application_checks(), ids=_ids)
def test_self_application_steps(label, check):
    check()


@pytest.mark.parametrize("label, check", worked.normal_form_rows(), ids=_ids)
def test_normal_form_table(label, check):
    check()


# --- the corpus --------------------------------------------------------------------------------


P2_TEXT = "fn a : *. fn b : *. a, fn a : *. fn b : *. b"
Z2_TEXT = f"z2 in {{{P2_TEXT}}} : * -> * -> *"


class TestCorpus:
    def test_polymorphic_identity(self):
        e = corpus()["poly-id"]
        assert e.context == parse_context("y : *")
        assert e.term == parse_term(f"fn {Z2_TEXT}. fn u : z2 y (y -> y). u")
        assert e.type == parse_term(f"Pi {Z2_TEXT}. z2 y (y -> y) -> z2 y (y -> y)")

    def test_self_application(self):
        e = corpus()["self-app"]
        w_type = f"Pi {Z2_TEXT}. z2 y (y -> y) -> z2 y (y -> y)"
        w_prime = f"fn {Z2_TEXT}. fn u : z2 y (y -> y). u"
        p1, p2 = "fn a : *. fn b : *. a", "fn a : *. fn b : *. b"
        assert e.term == parse_term(f"(fn w : {w_type}. w ({p2}) (w ({p1}))) ({w_prime})")
        assert e.type == parse_term("y -> y")

    def test_urzyczyn_v(self):
        _, headers = worked._table_text()
        p3 = [f"fn a : *. fn b : *. fn c : *. {v}" for v in "abc"]
        v = (
            f"fn {Z2_TEXT}. fn o : z2 ({headers['E']}) ({headers['D']}). "
            f"o ({p3[0]}) (o ({p3[1]})) (o ({p3[2]}))"
        )
        assert urzyczyn().V == parse_term(v)
        assert corpus()["urz-V"].type == parse_term(headers["R"])

    def test_urzyczyn_context(self):
        e = corpus()["urzyczyn-U"]
        uy = "(y -> (y -> y) -> y)"
        h = f"((y -> y) -> y -> y) -> (({uy} -> {uy}) -> {uy}) -> y"
        assert e.context == parse_context(f"y : *, h : {h}")
        assert e.type == Y

    def test_size(self):
        assert len(corpus()) == 51
        assert len(satisfaction_corpus()) == 10


# --- committed snapshots ---------------------------------------------------------------------


def _snapshot_module():
    spec = importlib.util.spec_from_file_location("write_snapshots", ROOT / "samples" / "write_snapshots.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_snapshots_are_current():
    mod = _snapshot_module()
    expected = mod.snapshots()
    on_disk = {p.name: p.read_text(encoding="utf-8") for p in mod.HERE.iterdir()}
    assert on_disk == expected


@pytest.mark.parametrize("name", sorted(corpus()))
def test_snapshots_parse_back(name):
    folder = ROOT / "samples" / "judgements"
    e = corpus()[name]
    ctx = parse_context((folder / f"{name}.ctx").read_text(encoding="utf-8"))
    assert ctx == e.context
    assert parse_term((folder / f"{name}.term").read_text(encoding="utf-8"), ctx) == e.term
    assert parse_term((folder / f"{name}.type").read_text(encoding="utf-8"), ctx) == e.type
