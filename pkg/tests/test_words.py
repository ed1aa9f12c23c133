import pytest
from hypothesis import given, settings, strategies as st

from skewgentle.corpus import corpus_generate
from skewgentle.fixtures import band_pair, e1, e3, e4
from skewgentle.words import (CurveError, GradedCurve, HomotopyWord, Letter, WordError, check_round_trip,
                              classify_symmetry, context, curve_to_word, enumerate_bands, enumerate_infinite,
                              enumerate_strings, enumerate_words, equivalent, parse_word, reduce_curve,
                              symmetric_band_shape, validate_word, word_to_curve)

E3_STRING = "a2 a3, a3~, a4~ (1,2,1,0)"
E3_BAND = "band: a2 a3, a3~, a4~, a1 (0,1,0,-1,0)"


# ------------------------------------------------------------------ parsing and validation


def test_parse_and_print():
    w = parse_word(E3_STRING)
    assert w.letters == (Letter(("a2", "a3")), Letter(("a3",), True), Letter(("a4",), True))
    assert w.mu == (1, 2, 1, 0)
    assert parse_word(w.text()) == w
    assert w.pretty() == "(a2a3)(~a3)(~a4)"
    assert HomotopyWord.from_dict(w.as_dict()) == w


def test_parse_band_and_tails():
    b = parse_word(E3_BAND)
    assert b.band and b.kind == "band" and len(b) == 4
    t = parse_word("<a1 e a >a1 (0)")
    assert t.kind == "two-sided-infinite" and t.vertex == "a"


def test_garbage_does_not_parse():
    with pytest.raises(WordError):
        parse_word("a1 a2")
    with pytest.raises(WordError):
        parse_word("a1,, a2 (0,1,2)")


def test_e3_words_are_valid():
    p = e3()
    assert validate_word(parse_word(E3_STRING), p).ok
    assert validate_word(parse_word(E3_BAND), p).ok


@pytest.mark.parametrize("text, why", [
    ("a2, a3 (0,1,2)", "nonzero"),
    ("a2, a4 (0,1,2)", "compose"),
    ("a2 a3, a3~ (0,1,2)", "grading"),
    ("band: a2 a3, a3~, a4~, a1 (0,1,0,-1,1)", "grading"),
])
def test_invalid_words_name_the_failure(text, why):
    rep = validate_word(parse_word(text), e3())
    assert not rep.ok
    assert any(why in msg for _, msg in rep.failures)


def test_trivial_words():
    p = e3()
    w = parse_word("e 2 (5)")
    assert validate_word(w, p).ok
    c = word_to_curve(w, p)
    assert c.crossings == ("2",) and c.grading == (5,)
    assert curve_to_word(c, p) == w


def test_consecutive_direct_letters_need_a_relation():
    # a1 a2 is a relation of the algebra, so (a1)(a2) is a word
    assert validate_word(parse_word("a1, a2 (0,1,2)"), e3()).ok


# ------------------------------------------------------------------ symmetry


def test_e3_words_are_asymmetric():
    assert classify_symmetry(parse_word(E3_STRING)).classification == "asymmetric"
    assert classify_symmetry(parse_word(E3_BAND)).classification == "asymmetric"


def test_symmetric_string_through_a_special_vertex():
    w = parse_word("a, a~ (0,1,0)")
    assert validate_word(w, band_pair()).ok
    assert classify_symmetry(w).classification == "symmetric"


def test_symmetric_band_shape():
    b = parse_word("band: a, a~, b, b~ (0,1,0,1,0)")
    p = band_pair()
    assert validate_word(b, p).ok
    assert classify_symmetry(b).classification == "symmetric"
    assert symmetric_band_shape(b, p) == (0, 1)


# ------------------------------------------------------------------ curves


def test_e3_string_curve():
    c = word_to_curve(parse_word(E3_STRING), e3())
    assert c.kind == "arc"
    assert c.crossings == ("1", "4", "2", "3")
    assert c.grading == (1, 2, 1, 0)
    assert all(e["type"] == "marked" for e in c.ends)


def test_e3_band_curve_closes():
    c = word_to_curve(parse_word(E3_BAND), e3())
    assert c.kind == "closed" and c.crossings[0] == c.crossings[-1]
    assert sorted(c.crossings[:-1]) == ["1", "2", "3", "4"]


def test_curve_without_darts_or_full_grading():
    c = GradedCurve(("1", "4", "2", "3"), "arc", (), (1,))
    assert curve_to_word(c, e3()) == parse_word(E3_STRING)


def test_json_round_trip_of_curve():
    c = word_to_curve(parse_word(E3_STRING), e3())
    assert GradedCurve.from_dict(c.as_dict()) == c


def test_backtrack_is_reduced():
    p = e3()
    ip = context(p).iota_p
    c = GradedCurve(("1", "4", "4", "4", "2", "3"), "arc", (), (1,), (0, 2, ip[2], 2, 6, 3))
    r = reduce_curve(c, p)
    assert r.crossings == ("1", "4", "2", "3")
    assert curve_to_word(r, p) == parse_word(E3_STRING)


def test_unreduced_curve_is_rejected():
    p = e3()
    ip = context(p).iota_p
    c = GradedCurve(("1", "4", "4", "4", "2", "3"), "arc", (), (1,), (0, 2, ip[2], 2, 6, 3))
    with pytest.raises(CurveError):
        curve_to_word(c, p)


def test_reversed_curve_is_equivalent():
    p = e3()
    fwd = GradedCurve(("1", "4", "2", "3"), "arc", (), (1,))
    rev = GradedCurve(("3", "2", "4", "1"), "arc", (), (0,))
    assert equivalent(fwd, rev, p)
    assert not equivalent(fwd, fwd.shift(1), p)


def test_band_rotation_is_equivalent():
    p = e3()
    b = parse_word(E3_BAND)
    assert equivalent(word_to_curve(b, p), word_to_curve(b.rotate(2), p), p)
    assert equivalent(word_to_curve(b, p), word_to_curve(b.inverse().rotate(1), p), p)


def test_shift_commutes():
    p = e3()
    w = parse_word(E3_STRING)
    assert word_to_curve(w.shift(4), p) == word_to_curve(w, p).shift(4)


def test_malformed_curve():
    with pytest.raises(CurveError):
        GradedCurve.from_dict({"kind": "arc"})
    with pytest.raises(CurveError):
        GradedCurve.from_dict({"crossings": ["1"], "kind": "spiral"})


# ------------------------------------------------------------------ enumeration


def test_bands_close_with_matching_grading():
    p = e3()
    bands = list(enumerate_bands(p, 4))
    assert parse_word(E3_BAND) in bands
    for b in bands:
        assert b.mu[0] == b.mu[-1] and validate_word(b, p).ok


def test_e1_has_no_bands_or_infinite_words():
    p = e1()
    assert not list(enumerate_bands(p, 6))
    assert not list(enumerate_infinite(p, 6))


def test_e4_infinite_words_wrap_the_interior_polygon():
    p = e4()
    words = list(enumerate_infinite(p, 2))
    assert words and all(validate_word(w, p).ok for w in words)
    for w in words:
        c = word_to_curve(w, p)
        assert c.kind == "infinite" or any(e.get("type") == "puncture" for e in c.ends)


def test_enumerated_strings_are_valid_and_distinct():
    p = e3()
    ws = list(enumerate_strings(p, 4))
    assert len(ws) == len(set(ws))
    assert all(validate_word(w, p).ok for w in ws)


@pytest.mark.parametrize("make", [e1, e3, e4, band_pair])
def test_fixture_round_trip(make):
    p = make()
    for w in enumerate_words(p, 4):
        assert check_round_trip(w, p) is None


@given(st.integers(0, 10_000), st.integers(0, 10_000), st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_round_trip_on_random_algebras(seed, pick, shift):
    p = corpus_generate(seed, 1, max_edges=5)[0]
    ws = enumerate_words(p, 3)
    w = ws[pick % len(ws)].shift(shift)
    c = word_to_curve(w, p)
    assert curve_to_word(c, p) == w
    assert curve_to_word(c.shift(2), p) == w.shift(2)
