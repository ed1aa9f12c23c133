"""Small named algebras used by tests, scripts and the CLI."""
from __future__ import annotations

from .algebra import AlgebraPresentation, Quiver


def e1() -> AlgebraPresentation:
    """Linear A4 quiver 4->3->2->1 with a special loop at 1, no relations."""
    q = Quiver.build(["4", "3", "2", "1"],
                     [("a1", "4", "3"), ("a2", "3", "2"), ("a3", "2", "1")])
    return AlgebraPresentation(q, (), frozenset({"1"}))


def e2() -> AlgebraPresentation:
    """3->2->1 with special loops at 3 and 2 and the relation a1 a2."""
    q = Quiver.build(["3", "2", "1"], [("a1", "3", "2"), ("a2", "2", "1")])
    return AlgebraPresentation(q, (("a1", "a2"),), frozenset({"3", "2"}))


def e3() -> AlgebraPresentation:
    """Four vertices, two zero relations, special loop at 4."""
    q = Quiver.build(["1", "2", "3", "4"],
                     [("a1", "3", "1"), ("a2", "1", "2"), ("a3", "2", "4"), ("a4", "3", "2")])
    return AlgebraPresentation(q, (("a1", "a2"), ("a4", "a3")), frozenset({"4"}))


def e4() -> AlgebraPresentation:
    """Oriented 3-cycle with all relations and a special loop at b."""
    q = Quiver.build(["a", "b", "c"], [("a1", "a", "b"), ("a2", "b", "c"), ("a3", "c", "a")])
    return AlgebraPresentation(q, (("a1", "a2"), ("a2", "a3"), ("a3", "a1")), frozenset({"b"}))


def band_pair() -> AlgebraPresentation:
    """x with arrows to special vertices y and z; carries a symmetric band a ~a b ~b."""
    q = Quiver.build(["w", "x", "y", "z"],
                     [("c", "w", "x"), ("a", "x", "y"), ("b", "x", "z")])
    return AlgebraPresentation(q, (("c", "a"),), frozenset({"y", "z"}))


def chain_two_special() -> AlgebraPresentation:
    """i->j->k->l with j, k special and relations at both; exercises binomial overlaps."""
    q = Quiver.build(["i", "j", "k", "l"], [("al", "i", "j"), ("be", "j", "k"), ("ga", "k", "l")])
    return AlgebraPresentation(q, (("al", "be"), ("be", "ga")), frozenset({"j", "k"}))


def point() -> AlgebraPresentation:
    return AlgebraPresentation(Quiver.build(["1"], []), (), frozenset())


NAMED = {
    "e1": e1, "e2": e2, "e3": e3, "e4": e4,
    "band_pair": band_pair, "chain_two_special": chain_two_special, "point": point,
}
