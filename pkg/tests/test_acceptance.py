"""End-to-end checks of the classification and every braid identity it rests on"""

from itertools import combinations

import pytest

from braid_core import BraidWord, concat, generator, perm, power, rotate180
from garside import equals, is_trivial
from interchange import (
    classify,
    double_coset_identity,
    family,
    h_power,
    hexagon_check,
    hexagon_words,
    inner_outer_profile,
    is_interchanging,
    k_power,
)
from links import braiding_obstruction, closure_summary
from models import SearchConfig, Sign
from search import coset_property_sample, run_search

W = BraidWord.from_text

MEMBERS = [(n, sign) for n in range(4) for sign in Sign]


def test_word_problem_sanity():
    assert equals(W("3: 1 2 1"), W("3: 2 1 2"))
    assert equals(W("4: 1 3"), W("4: 3 1"))
    assert is_trivial(W("4: 1 2 1 -2 -1 -2"))


@pytest.mark.parametrize("n, sign", MEMBERS)
def test_family_members_are_interchanging(n, sign):
    report = is_interchanging(family(n, sign))
    assert report.candidate
    assert report.internal_assoc and report.external_assoc
    assert report.interchanging


def test_triple_crossing_counterexample():
    report = is_interchanging(W("4: 2 2 2"))
    assert not report.internal_assoc
    assert not report.external_assoc


@pytest.mark.parametrize("n", range(5))
def test_inner_outer_exponents(n):
    for sign in Sign:
        s = sign.unit
        profile = inner_outer_profile(family(n, sign))
        if n % 2:
            assert (profile.inner, profile.outer) == (s * n, s * (n + 1))
        else:
            assert (profile.inner, profile.outer) == (s * (n + 1), s * n)
        assert profile.pattern_ok


def test_family_members_are_distinct():
    for (n, s), (m, t) in combinations(MEMBERS, 2):
        assert not equals(family(n, s), family(m, t))
        first, second = inner_outer_profile(family(n, s)), inner_outer_profile(family(m, t))
        assert (first.inner, first.outer) != (second.inner, second.outer)


@pytest.mark.parametrize("n, sign", MEMBERS)
def test_family_is_rotation_invariant(n, sign):
    b = family(n, sign)
    assert equals(rotate180(b), b)


@pytest.mark.parametrize("n", range(4))
def test_double_coset_spellings(n):
    plus = concat(h_power(n), generator(4, 2), k_power(-n))
    assert equals(plus, concat(k_power(-n), generator(4, 2), h_power(n)))
    assert double_coset_identity(n, Sign.PLUS)
    assert double_coset_identity(n, Sign.MINUS)


@pytest.mark.parametrize("s", [1, -1])
def test_opposite_of_product_differs_from_product_of_opposites(s):
    # both sides drawn upside down, one crossing sign throughout
    product_op = rotate180(BraidWord.of(4, [s, 3 * s, 2 * s]))
    op_product = rotate180(BraidWord.of(4, [2 * s, 2 * s, s, 3 * s, 2 * s]))
    assert perm(product_op) == perm(op_product)
    assert not equals(product_op, op_product)


def test_hexagon_powers():
    assert hexagon_check(1) and hexagon_check(-1)
    for k in (3, -3, 5, -5):
        assert not hexagon_check(k)
    legs, cabled = hexagon_words(3)
    assert (str(legs), str(cabled)) == ("3: 1 1 1 2 2 2", "3: 1 2 2 1 1 2")


@pytest.mark.parametrize("k", [1, 3, 5])
def test_braiding_obstruction(k):
    assert closure_summary(power(W("4: 1 3"), k)).linking_multiset() == [0]
    assert closure_summary(power(W("4: 2 1 3 2"), k)).linking_multiset() == [k]
    assert braiding_obstruction(k)


def test_exhaustive_search_length_one():
    report = run_search(SearchConfig(max_len=1))
    assert report.family_members() == [(0, "+"), (0, "-")]


@pytest.mark.slow
def test_exhaustive_search_length_seven():
    report = run_search(SearchConfig(max_len=7, workers=4))
    assert report.anomalies == []
    assert report.interchanging
    assert all(c.classification.in_family for c in report.interchanging)
    assert {c.classification.n for c in report.interchanging} <= {0, 1}


def test_screens_agree_with_unscreened_search():
    report = run_search(SearchConfig(max_len=5, screens_enabled=False))
    assert report.family_members() == [(0, "+"), (0, "-")]
    assert report.screen_violations == []
    assert report.anomalies == []


def test_double_coset_sample():
    report = coset_property_sample(max_h=2, max_k=2)
    assert report.sampled == 125
    assert report.violations == []


@pytest.mark.parametrize("n, sign", MEMBERS)
def test_classification_of_family(n, sign):
    result = classify(family(n, sign))
    assert result.in_family
    assert (result.n, result.sign) == (n, sign)
