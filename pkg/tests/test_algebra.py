import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from skewgentle.algebra import (AlgebraPresentation, PathCombination, Quiver, StructuralError,
                                admissible_presentation, canonical_form, derived_presentations,
                                validate_gentle, validate_skew_gentle)
from skewgentle.corpus import corpus_generate
from skewgentle.fixtures import e1, e2, e3, e4, point


def small_algebra(seed: int) -> AlgebraPresentation:
    return corpus_generate(seed, 1, max_edges=6)[0]


seeds = st.integers(min_value=0, max_value=10_000)


def relabel(p: AlgebraPresentation, rng: random.Random) -> AlgebraPresentation:
    vs = list(p.quiver.vertices)
    names = [a.name for a in p.quiver.arrows]
    vmap = dict(zip(vs, rng.sample([f"v{k}" for k in range(len(vs))], len(vs))))
    amap = dict(zip(names, rng.sample([f"b{k}" for k in range(len(names))], len(names))))
    arrows = [(amap[a.name], vmap[a.source], vmap[a.target]) for a in p.quiver.arrows]
    rng.shuffle(arrows)
    order = list(vmap.values())
    rng.shuffle(order)
    rels = [(amap[a], amap[b]) for a, b in p.relations]
    rng.shuffle(rels)
    return AlgebraPresentation(Quiver.build(order, arrows), tuple(rels), frozenset(vmap[v] for v in p.special))


def as_graph(p: AlgebraPresentation) -> nx.DiGraph:
    """Vertices and arrows as nodes; relations as edges between arrow nodes."""
    g = nx.DiGraph()
    for v in p.quiver.vertices:
        g.add_node(("v", v), kind="vertex", special=v in p.special)
    for a in p.quiver.arrows:
        g.add_node(("a", a.name), kind="arrow", special=False)
        g.add_edge(("v", a.source), ("a", a.name), kind="out")
        g.add_edge(("a", a.name), ("v", a.target), kind="in")
    for a, b in p.relations:
        g.add_edge(("a", a), ("a", b), kind="rel")
    return g


def isomorphic(p, q) -> bool:
    return nx.is_isomorphic(as_graph(p), as_graph(q),
                            node_match=lambda x, y: x == y, edge_match=lambda x, y: x == y)


# ------------------------------------------------------------------ validation


def test_e3_without_loop_is_gentle():
    lam = e3().with_special(())
    rep = validate_gentle(lam)
    assert rep.ok and rep.locally


def test_point_is_gentle():
    assert validate_gentle(point()).ok


def test_saturated_three_cycle_is_gentle():
    lam = e4().with_special(())
    rep = validate_gentle(lam)
    assert rep.ok and rep.locally


def test_cycle_without_relations_is_only_locally_gentle():
    q = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    rep = validate_gentle(AlgebraPresentation(q))
    assert not rep.ok and rep.flagged_locally
    assert any(ax == "5" for ax, _ in rep.failures)


@pytest.mark.parametrize("make", [e1, e2, e3, e4])
def test_fixtures_are_skew_gentle(make):
    assert validate_skew_gentle(make()).ok


def test_extra_arrow_at_special_vertex_is_rejected():
    p = e1()
    q = Quiver.build(list(p.quiver.vertices) + ["5"],
                     [(a.name, a.source, a.target) for a in p.quiver.arrows] + [("b", "1", "5")])
    rep = validate_skew_gentle(AlgebraPresentation(q, (), frozenset({"1"})))
    assert not rep.ok
    assert any("1" in d for ax, d in rep.failures if ax == "4")


def test_too_many_arrows_fails_axiom_one():
    q = Quiver.build(["0", "1", "2", "3"], [("a", "1", "0"), ("b", "2", "0"), ("c", "3", "0")])
    rep = validate_gentle(AlgebraPresentation(q))
    assert not rep.ok and any(ax == "1" for ax, _ in rep.failures)


def test_dangling_arrow_is_a_structural_error():
    with pytest.raises(StructuralError):
        Quiver.build(["1"], [("a", "1", "9")])


def test_relation_that_is_not_a_path_is_a_structural_error():
    q = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "1", "3")])
    with pytest.raises(StructuralError):
        AlgebraPresentation(q, (("a", "b"),))


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_skew_gentle_with_no_special_vertices_agrees_with_gentle(seed):
    lam = small_algebra(seed).with_special(())
    assert validate_skew_gentle(lam).ok == validate_gentle(lam).ok


# ------------------------------------------------------------------ presentations


def test_e1_presentation_is_d5_without_relations():
    ap = admissible_presentation(e1())
    assert ap.relations == ()
    assert set(ap.quiver.vertices) == {"4", "3", "2", "1+", "1-"}
    assert {(a.source, a.target) for a in ap.quiver.arrows} == {("4", "3"), ("3", "2"), ("2", "1+"), ("2", "1-")}


def test_e2_binomials_carry_the_minus_sign_on_minus_vertices():
    ap = admissible_presentation(e2())
    want = {
        PathCombination.from_dict({("(3-,a1,2+)", "(2+,a2,1)"): 1, ("(3-,a1,2-)", "(2-,a2,1)"): -1}),
        PathCombination.from_dict({("(3+,a1,2+)", "(2+,a2,1)"): 1, ("(3+,a1,2-)", "(2-,a2,1)"): -1}),
    }
    assert set(ap.relations) == want


def test_gentle_presentation_is_returned_unchanged():
    lam = e3().with_special(())
    ap = admissible_presentation(lam)
    assert ap.quiver == lam.quiver
    assert [r.paths()[0] for r in ap.relations] == [tuple(r) for r in lam.relations]


def test_derived_presentations_e3_and_e2():
    lam, plus = derived_presentations(e3())
    assert set(lam.relations) == set(plus.relations) == {("a1", "a2"), ("a4", "a3")}
    lam, plus = derived_presentations(e2())
    assert set(lam.relations) == {("a1", "a2")} and plus.relations == ()


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_split_quiver_size_and_quadratic_relations(seed):
    p = small_algebra(seed)
    ap = admissible_presentation(p)
    assert len(ap.quiver.vertices) == len(p.quiver.vertices) + len(p.special)
    for r in ap.relations:
        assert r.degree() == 2 and r.is_uniform(ap.quiver)
        assert all(c in (1, -1) for c, _ in r.terms)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_sign_change_turns_binomials_into_plain_sums(seed):
    # flipping the sign of every arrow into a minus vertex turns each binomial into a plain sum
    p = small_algebra(seed)
    ap = admissible_presentation(p)
    for r in ap.binomials():
        twisted = {path: c * (-1 if ap.sign(ap.quiver.arrow(path[0]).target) == "-" else 1) for c, path in r.terms}
        assert set(twisted.values()) == {Fraction(1)}


# ------------------------------------------------------------------ canonical form


@given(seeds, st.integers(0, 1000))
@settings(max_examples=50, deadline=None)
def test_canonical_form_ignores_labels(seed, shuffle):
    p = small_algebra(seed)
    assert canonical_form(relabel(p, random.Random(shuffle))) == canonical_form(p)


def test_canonical_form_agrees_with_graph_isomorphism():
    algebras = corpus_generate(11, 20, max_edges=4) + [e1(), e2(), e3(), e4()]
    rng = random.Random(0)
    algebras += [relabel(p, rng) for p in algebras[:6]]
    for i, p in enumerate(algebras):
        for q in algebras[i + 1:]:
            assert (canonical_form(p) == canonical_form(q)) == isomorphic(p, q)


def test_canonical_form_separates_a_changed_relation():
    p = e3()
    q = p.with_relations((("a1", "a2"),))
    assert canonical_form(p) != canonical_form(q)
