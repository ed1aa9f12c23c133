from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skewgentle.complexes import (BandParameter, ComplexError, band_complex, d_squared_residue, ranks,
                                  string_complex)
from skewgentle.corpus import corpus_generate
from skewgentle.fixtures import band_pair, e1, e2, e3, e4
from skewgentle.words import classify_symmetry, enumerate_words, parse_word


def positions(w, p):
    """Vertices v_0..v_r visited by a word, read off the quiver directly."""
    q = p.quiver
    if not w.letters:
        return [w.vertex]
    out = []
    for x in w.letters:
        s, t = q.path_source(x.path), q.path_target(x.path)
        if x.inverse:
            s, t = t, s
        if not out:
            out.append(s)
        out.append(t)
    return out


def rank_table(w, p, mult=1):
    """Degree -> Counter of projective summands: P(i) is P(i+) + P(i-) at special i."""
    verts = positions(w, p)
    if w.band:
        verts = verts[:-1]
    out = {}
    for i, v in enumerate(verts):
        row = out.setdefault(w.mu[i], Counter())
        for sv in ([v + "+", v + "-"] if v in p.special else [v]):
            row[sv] += mult
    return out


def summand_table(c):
    return {j: Counter(row) for j, row in c.graded_dimension_vector().items()}


def poly(k):
    return BandParameter((-2,) + (0,) * (k - 1) + (1,))


E3_STRING = "a2 a3, a3~, a4~ (1,2,1,0)"
E3_BAND = "band: a2 a3, a3~, a4~, a1 (0,1,0,-1,0)"


# ------------------------------------------------------------------ strings


def test_e3_string_complex():
    p = e3()
    c = string_complex(parse_word(E3_STRING), p)
    assert summand_table(c) == {0: Counter({"3": 1}), 1: Counter({"1": 1, "2": 1}),
                                2: Counter({"4+": 1, "4-": 1})}
    assert d_squared_residue(c, p) == {}
    entries = {(c.summands[a].vertex, c.summands[b].vertex): x.format() for (a, b), x in c.differential.items()}
    assert entries[("3", "2")] == "a4"
    assert entries[("2", "4+")] == "(2,a3,4+)"
    assert entries[("2", "4-")] == "-(2,a3,4-)"


def test_e1_stalk_at_the_special_vertex():
    c = string_complex(parse_word("e 1 (0)"), e1())
    assert summand_table(c) == {0: Counter({"1+": 1, "1-": 1})}
    assert not c.differential


def test_trivial_word_in_degree_five():
    c = string_complex(parse_word("e 2 (5)"), e3())
    assert summand_table(c) == {5: Counter({"2": 1})}


def test_binomial_relation_is_what_makes_d_squared_vanish():
    p = e2()
    c = string_complex(parse_word("a1, a2 (0,1,2)"), p)
    assert d_squared_residue(c, p) == {}
    k = next(k for k, x in c.differential.items() if c.summands[k[1]].vertex == "2-" and c.summands[k[0]].vertex == "3+")
    c.differential[k] = -c.differential[k]
    assert d_squared_residue(c, p)


def test_symmetric_string_gives_ranks_only():
    p = band_pair()
    c = string_complex(parse_word("a, a~ (0,1,0)"), p)
    assert c.dimidiate and not c.differentials_available
    assert summand_table(c) == {0: Counter({"x": 2}), 1: Counter({"y+": 1, "y-": 1})}
    assert c.as_dict()["differential"] == "differentials-unavailable"


def test_strings_with_tails_are_refused():
    with pytest.raises(ComplexError):
        string_complex(parse_word("<a1 e a (0)"), e4())


# ------------------------------------------------------------------ bands


@pytest.mark.parametrize("k", [1, 2, 3])
def test_e3_band_multiplicity(k):
    p = e3()
    w = parse_word(E3_BAND)
    c = band_complex(w, poly(k), p)
    assert summand_table(c) == rank_table(w, p, k)
    assert d_squared_residue(c, p) == {}


def test_companion_matrix():
    m = BandParameter((Fraction(3), Fraction(-1), Fraction(1))).companion()
    assert m == [[0, -3], [1, 1]]


@pytest.mark.parametrize("coeffs", [(0, 1), (-1, 1), (1, 2), (5,)])
def test_bad_band_polynomials(coeffs):
    with pytest.raises(ComplexError):
        BandParameter(coeffs)


def test_symmetric_band_follows_the_q_table():
    p = band_pair()
    w = parse_word("band: a, a~, b, b~ (0,1,0,1,0)")
    c = band_complex(w, BandParameter(sizes=(1, 2, 3, 4)), p)
    # position 0 carries P(x) with l + l' copies; the turning points split by l, l' and m, m'
    assert summand_table(c) == {0: Counter({"x": 3}), 1: Counter({"y+": 1, "y-": 2, "z+": 3, "z-": 4})}
    assert c.dimidiate and not c.differentials_available
    c1 = band_complex(w, BandParameter(sizes=(1, 1, 1, 1)), p)
    assert ranks(c1) == {0: 2, 1: 4}


def test_band_parameter_kind_must_match_symmetry():
    p = band_pair()
    with pytest.raises(ComplexError):
        band_complex(parse_word("band: a, a~, b, b~ (0,1,0,1,0)"), BandParameter.linear(), p)
    with pytest.raises(ComplexError):
        band_complex(parse_word(E3_BAND), BandParameter(sizes=(1, 1, 1, 1)), e3())


# ------------------------------------------------------------------ shift


@pytest.mark.parametrize("m", [-2, 0, 1, 3])
def test_shift_commutes_with_construction(m):
    p = e3()
    w = parse_word(E3_STRING)
    built = string_complex(w.shift(m), p)
    shifted = string_complex(w, p).shift(m)
    assert built.summands == shifted.summands
    assert built.differential == shifted.differential
    assert shifted.shift(-m).summands == string_complex(w, p).summands


def test_euler_class_ignores_shift_by_two():
    p = e3()
    c = string_complex(parse_word(E3_STRING), p)
    assert c.shift(2).euler_class() == c.euler_class() == {"3": 1, "1": -1, "2": -1, "4+": 1, "4-": 1}


# ------------------------------------------------------------------ random algebras


@given(st.integers(0, 10_000), st.integers(0, 10_000))
@settings(max_examples=60, deadline=None)
def test_asymmetric_complexes_on_random_algebras(seed, pick):
    p = corpus_generate(seed, 1, max_edges=5)[0]
    ws = [w for w in enumerate_words(p, 4, infinite=False)
          if classify_symmetry(w).classification == "asymmetric"]
    if not ws:
        return
    w = ws[pick % len(ws)]
    for k in ((1, 2) if w.band else (1,)):
        c = band_complex(w, poly(k), p) if w.band else string_complex(w, p)
        assert summand_table(c) == rank_table(w, p, k)
        assert d_squared_residue(c, p) == {}
