from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dnls_scattering import words as W
from dnls_scattering.errors import AdmissibilityError


def admissible_words(max_degree=3):
    return st.integers(0, max_degree).flatmap(lambda d: st.sampled_from(W.dyck_words(d)))


def test_admissibility_and_heights():
    assert W.is_admissible("XXYY") and W.is_admissible("")
    assert not W.is_admissible("YX") and not W.is_admissible("XXY")
    assert W.heights("XXYXYY") == [1, 2, 1, 2, 1, 0]
    assert W.degree("XXYXYY") == 3


def test_pairing_and_connectedness():
    assert W.pair("XXYY") == {1: 4, 2: 3}
    assert W.is_connected("XXYY") and W.is_connected("XXYXYY")
    assert not W.is_connected("XYXY")


def test_dyck_word_counts_are_catalan():
    assert [len(W.dyck_words(d)) for d in range(6)] == [1, 1, 2, 5, 14, 42]


def test_shuffle_of_xy_with_itself():
    assert W.shuffle("XY", "XY") == W.WordSeries({"XYXY": 2, "XXYY": 4})


def test_shuffle_rejects_inadmissible():
    with pytest.raises(AdmissibilityError):
        W.shuffle("YX", "XY")
    with pytest.raises(AdmissibilityError):
        W.as_word("XZ")


@settings(max_examples=40, deadline=None)
@given(admissible_words(), admissible_words())
def test_shuffle_commutes_and_counts_interleavings(a, b):
    s = W.shuffle(a, b)
    assert s == W.shuffle(b, a)
    assert sum(s.values()) == comb(len(a) + len(b), len(a))


@settings(max_examples=20, deadline=None)
@given(admissible_words(2), admissible_words(2), admissible_words(2))
def test_shuffle_is_associative(a, b, c):
    assert W.shuffle(W.shuffle(a, b), c) == W.shuffle(a, W.shuffle(b, c))


def test_log_series_low_degrees():
    L = W.log_series(3)
    assert L[0] == W.WordSeries({"XY": 1})
    assert L[1] == W.WordSeries({"XXYY": 2})
    assert L[2] == W.WordSeries({"XXYXYY": 4, "XXXYYY": 12})


def test_log_series_words_are_connected_through_degree_five():
    L = W.log_series(5)
    assert [len(x) for x in L] == [1, 1, 2, 5, 14]
    assert all(W.is_connected(w) for x in L for w in x)


def test_exp_log_roundtrip():
    s = W.s11_series(4)
    assert W.shuffle_exp(W.shuffle_log(s, 4), 4) == s


def test_group_like_and_primitive():
    assert W.is_group_like(W.s11_series(5), 5)
    assert all(W.is_primitive(x) for x in W.log_series(5))
    assert not W.is_primitive(W.WordSeries({"XYXY": 1}))


def test_full_deconcatenation_counts_all_cuts():
    cop = W.coproduct("XXYY")
    assert len(cop) == 5 and cop[("XX", "YY")] == 1
    assert W.coproduct("XXYY", admissible_only=True) == {("", "XXYY"): 1, ("XXYY", ""): 1}


def test_coproduct_is_shuffle_morphism_on_admissible_cuts():
    a, b = "XY", "XXYY"
    lhs = W.coproduct(W.shuffle(a, b), admissible_only=True)
    rhs = W.tensor_shuffle(W.coproduct(a, admissible_only=True), W.coproduct(b, admissible_only=True))
    assert lhs == rhs


def test_text_roundtrip_and_pretty():
    s = W.WordSeries({"": 1, "XXYY": Fraction(-3, 2), "XY": 5})
    assert W.WordSeries.from_text(s.to_text()) == s
    assert W.log_series(3)[2].pretty() == "4 XXYXYY + 12 XXXYYY"


def test_series_arithmetic():
    a = W.WordSeries({"XY": 1})
    assert (a + a) == a * 2
    assert (a - a) == W.WordSeries.zero()
    assert (-a)["XY"] == -1
    assert (W.WordSeries.one() * a) == a


def test_asymptotic_coefficients_of_xxyy():
    assert W.asymptotic_coefficients("XY", 0) == {(0, 0): 1}
    assert W.asymptotic_coefficients("XXYY", 0) == {(0, 0, 0, 0): Fraction(1, 2)}
    c1 = W.asymptotic_coefficients("XXYY", 1)
    assert c1 == {(0, 0, 0, 1): Fraction(5, 4), (0, 0, 1, 0): Fraction(3, 4), (0, 1, 0, 0): Fraction(1, 2)}
    with pytest.raises(AdmissibilityError):
        W.asymptotic_coefficients("XYXY", 0)
