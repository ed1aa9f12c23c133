import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import cartan_by_linear_algebra, dims_by_linear_algebra
from skewgentle.algebra import AlgebraPresentation, Quiver, admissible_presentation, derived_presentations
from skewgentle.fixtures import NAMED, e1, e3, e4
from skewgentle.groebner import InfiniteDimensional
from skewgentle.invariants import (QPolynomial, SingularityProfile, cartan_determinant_check, det_bareiss,
                                   det_cofactor, gorenstein_dimension, invariants, product_formula, q_cartan,
                                   saturated_cycles, saturated_path_oracle, singularity_profile)

q = sympy.Symbol("q")


def to_sympy(x: QPolynomial):
    return sum(c * q ** k for k, c in enumerate(x.coeffs))


def as_sympy_matrix(m):
    return sympy.Matrix([[to_sympy(x) for x in row] for row in m])


# ------------------------------------------------------------------ polynomials and determinants


polys = st.lists(st.integers(-3, 3), max_size=4).map(lambda cs: QPolynomial(tuple(cs)))


@given(polys, polys)
def test_polynomial_ring_operations(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(st.integers(1, 5), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_determinants_agree_with_sympy(n, seed):
    rng = random.Random(seed)
    m = [[QPolynomial(tuple(rng.randint(-2, 2) for _ in range(rng.randint(0, 3)))) for _ in range(n)]
         for _ in range(n)]
    want = sympy.expand(as_sympy_matrix(m).det())
    assert sympy.expand(to_sympy(det_cofactor(m)) - want) == 0
    assert sympy.expand(to_sympy(det_bareiss(m)) - want) == 0


def test_polynomial_printing_and_division():
    x = QPolynomial((1, 0, 0, 1))
    assert str(x) == "1 + q^3"
    assert str(QPolynomial((0, -1, 2))) == "-q + 2q^2"
    assert x.exact_div(QPolynomial((1, 1))) == QPolynomial((1, -1, 1))
    with pytest.raises(ArithmeticError):
        x.exact_div(QPolynomial((1, 2)))


# ------------------------------------------------------------------ q-Cartan matrices


def test_e4_determinant_is_one_plus_q_cubed():
    ap = admissible_presentation(e4())
    m = q_cartan(ap)
    assert det_cofactor(m) == QPolynomial((1, 0, 0, 1))
    rep = cartan_determinant_check(e4())
    assert rep.det == rep.product == rep.det_gentle == QPolynomial((1, 0, 0, 1))
    assert sympy.expand(as_sympy_matrix(m).det() - (1 + q ** 3)) == 0


def test_e3_cartan_matrix():
    ap = admissible_presentation(e3())
    vs = list(ap.quiver.vertices)
    m = q_cartan(ap)
    assert len(m) == 5
    assert m[vs.index("3")][vs.index("4+")].is_zero()
    assert m[vs.index("1")][vs.index("4+")] == QPolynomial.monomial(1, 2)


def test_e1_path_to_split_vertex():
    ap = admissible_presentation(e1())
    vs = list(ap.quiver.vertices)
    assert q_cartan(ap)[vs.index("4")][vs.index("1+")] == QPolynomial.monomial(1, 3)


@pytest.mark.parametrize("name", sorted(NAMED))
def test_cartan_matrix_matches_linear_algebra(name):
    ap = admissible_presentation(NAMED[name]())
    want, sym = cartan_by_linear_algebra(ap, len(ap.quiver.arrows))
    got = as_sympy_matrix(q_cartan(ap)).subs(q, sym)
    assert sympy.simplify(got - want) == sympy.zeros(*want.shape)


def test_classical_cartan_row_sums(corpus):
    for p in corpus[:15]:
        ap = admissible_presentation(p)
        m = q_cartan(ap)
        n = len(ap.quiver.arrows)
        for i, row in zip(ap.quiver.vertices, m):
            dim = sum(dims_by_linear_algebra(ap, i, j, k) for j in ap.quiver.vertices for k in range(n + 1))
            assert sum(x(1) for x in row) == dim


def test_infinite_dimensional_algebra_is_reported():
    qv = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    with pytest.raises(InfiniteDimensional):
        q_cartan(admissible_presentation(AlgebraPresentation(qv)))
    rep = invariants(AlgebraPresentation(qv, (("a", "b"),)))
    assert rep.cartan is not None


# ------------------------------------------------------------------ determinant identity


def test_determinant_identity_on_corpus(corpus):
    for p in corpus + [f() for f in NAMED.values()]:
        rep = cartan_determinant_check(p)
        assert rep.det == rep.product == rep.det_gentle


def test_tree_dissection_has_unit_determinant():
    rep = cartan_determinant_check(e1())
    assert singularity_profile(e1()).is_trivial()
    assert rep.det == rep.product == QPolynomial.const(1)


def test_product_formula_signs():
    assert product_formula(SingularityProfile((1,))) == QPolynomial((1, 1))
    assert product_formula(SingularityProfile((2,))) == QPolynomial((1, 0, -1))
    assert product_formula(SingularityProfile((3, 3))) == QPolynomial((1, 0, 0, 1)) ** 2


# ------------------------------------------------------------------ profile and Gorenstein dimension


def test_saturated_cycles_match_interior_polygons(corpus):
    for p in corpus + [f() for f in NAMED.values()]:
        lam, _ = derived_presentations(p)
        assert saturated_cycles(lam) == list(singularity_profile(p).sizes)


def test_e3_invariants():
    rep = invariants(e3())
    assert rep.gorenstein == 2 and rep.profile.is_trivial()


def test_e4_profile():
    assert singularity_profile(e4()).counts == {3: 1}
    assert gorenstein_dimension(e4()) == 0


def test_gorenstein_dimension_matches_saturated_paths(corpus):
    for p in corpus + [f() for f in NAMED.values()]:
        lam, _ = derived_presentations(p)
        assert gorenstein_dimension(p) == saturated_path_oracle(lam)
