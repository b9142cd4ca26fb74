import logging

import pytest

from braid_core import BraidError, BraidWord, StrandMismatchError
from garside import equals
from interchange import (
    NotInFamilyError,
    classify,
    double_coset_identity,
    equivalence_class,
    family,
    family_self_check,
    hexagon_check,
    hexagon_check_mirror,
    hexagon_words,
    inner_outer_profile,
    is_candidate,
    is_interchanging,
    joyal_street_exponent,
    obstruction_screens,
    op_tower,
    pattern_ok,
    profile_family,
    screens_refute,
)
from models import EquivalenceClass, RefusalReason, Sign

W = BraidWord.from_text


@pytest.mark.parametrize(
    "n, sign, expected",
    [
        (0, "+", "4: 2"),
        (0, "-", "4: -2"),
        (1, "-", "4: -2 -1 -3 -2 -2 1 3"),
        (2, "+", "4: 2 1 3 2 2 1 3 2 2 -1 -3 -1 -3"),
    ],
)
def test_family_words(n, sign, expected):
    assert str(family(n, sign)) == expected


def test_family_accepts_sign_enum_and_int():
    assert family(1, Sign.PLUS) == family(1, 1)


def test_family_rejects_negative_index():
    with pytest.raises(BraidError):
        family(-1, "+")


def test_is_candidate():
    assert is_candidate(W("4: 2")).candidate
    assert is_candidate(W("4: 2 2 2")).candidate
    report = is_candidate(W("4: 1 1 2"))
    assert report.permutation_ok
    assert not report.candidate
    assert report.unit_failures == [(3, 4)]
    assert report.internal_assoc is None


def test_is_candidate_bad_permutation():
    report = is_candidate(W("4: 1"))
    assert not report.permutation_ok
    assert not report.candidate


def test_wrong_strand_count():
    with pytest.raises(StrandMismatchError):
        is_candidate(W("3: 2"))


def test_is_interchanging():
    assert is_interchanging(W("4: 2")).interchanging
    assert is_interchanging(family(1, "-")).interchanging


def test_triple_crossing_is_not_interchanging():
    report = is_interchanging(W("4: 2 2 2"))
    assert report.candidate
    assert not report.internal_assoc
    assert not report.external_assoc
    assert not report.interchanging


def test_profiles():
    p = inner_outer_profile(W("4: 2"))
    assert (p.inner, p.outer, p.pattern_ok) == (1, 0, True)
    p = inner_outer_profile(family(1, "-"))
    assert (p.inner, p.outer, p.pattern_ok) == (-1, -2, True)
    p = inner_outer_profile(W("4: 2 2 2"))
    assert (p.inner, p.outer, p.pattern_ok) == (3, 0, False)


@pytest.mark.parametrize(
    "inner, outer, ok",
    [(1, 0, True), (-1, 0, True), (1, 2, True), (3, 2, True), (-3, -4, True),
     (2, 1, False), (1, -2, False), (3, 0, False), (-1, 2, False)],
)
def test_pattern_ok(inner, outer, ok):
    assert pattern_ok(inner, outer) is ok


def test_profile_family_reconstructs_index():
    for n in range(5):
        for sign in Sign:
            assert profile_family(inner_outer_profile(family(n, sign))) == (n, sign)


def test_classify_examples():
    result = classify(W("4: 2"))
    assert result.in_family and (result.n, result.sign) == (0, Sign.PLUS)
    assert result.label == "InFamily(0,+)"
    for text in ("4: 2 1 3 2 2 -1 -3", "4: -1 -3 2 2 1 3 2"):
        result = classify(W(text))
        assert (result.n, result.sign) == (1, Sign.PLUS)


def test_classify_refusals():
    assert classify(W("4: 1")).reason is RefusalReason.BAD_PERMUTATION
    assert classify(W("4: 1 1 2")).reason is RefusalReason.UNIT_FAILURE
    result = classify(W("4: 2 2 2"))
    assert result.reason is RefusalReason.PROFILE_MISMATCH
    assert result.label == "NotInterchanging(ProfileMismatch)"


def test_classify_with_report_still_reports_profile_first():
    b = W("4: 2 2 2")
    assert classify(b, is_interchanging(b)).reason is RefusalReason.PROFILE_MISMATCH


def test_classify_names_associativity_failure():
    b = W("4: 2")
    report = is_interchanging(b).model_copy(update={"internal_assoc": False, "interchanging": False})
    assert classify(b, report).reason is RefusalReason.ASSOCIATIVITY_FAILURE


def test_classify_does_not_trust_the_profile(mocker, caplog):
    mocker.patch("interchange.family", return_value=W("4: 2 2 2"))
    with caplog.at_level(logging.WARNING, logger="interchange"):
        result = classify(W("4: 2"))
    assert not result.in_family
    assert result.reason is RefusalReason.PROFILE_MISMATCH
    assert "passes the candidate and profile screens" in caplog.text


def test_equivalence_classes():
    assert equivalence_class(classify(family(0, "+"))) is EquivalenceClass.PLUS
    assert equivalence_class(classify(family(1, "-"))) is EquivalenceClass.PLUS
    assert equivalence_class(classify(family(1, "+"))) is EquivalenceClass.MINUS
    assert equivalence_class(classify(family(0, "-"))) is EquivalenceClass.MINUS


def test_equivalence_class_of_refusal():
    with pytest.raises(NotInFamilyError):
        equivalence_class(classify(W("4: 2 2 2")))


def test_equivalence_class_agrees_with_recovered_braiding():
    for n in range(5):
        for sign in Sign:
            b = family(n, sign)
            plus = equivalence_class(classify(b)) is EquivalenceClass.PLUS
            assert plus == (joyal_street_exponent(b) == 1)


def test_screens_rule_out_triple_crossing():
    a, b, c = obstruction_screens(W("4: 2 2 2"))
    assert a.applicable and not a.passed
    assert a.label == "ScreenA Applicable(fail)"
    assert screens_refute(W("4: 2 2 2"))


def test_screens_on_family():
    a, b, c = obstruction_screens(family(0, "+"))
    assert a.applicable and a.passed
    assert b.applicable and b.passed
    assert c.applicable and c.passed
    a, _, _ = obstruction_screens(family(2, "+"))
    assert not a.applicable
    assert a.label == "ScreenA NotApplicable"


def test_screens_need_a_candidate():
    assert not any(v.applicable for v in obstruction_screens(W("4: 1")))


def test_hexagon():
    assert hexagon_check(1)
    assert hexagon_check(-1)
    assert not hexagon_check(3)
    legs, cabled = hexagon_words(3)
    assert str(legs) == "3: 1 1 1 2 2 2"
    assert str(cabled) == "3: 1 2 2 1 1 2"


def test_hexagon_mirror():
    assert hexagon_check_mirror(1)
    assert hexagon_check_mirror(-1)
    assert not hexagon_check_mirror(3)


def test_hexagon_needs_odd_power():
    with pytest.raises(BraidError):
        hexagon_check(2)


def test_op_tower_reaches_family():
    assert equals(op_tower(0, 0, 0), family(0, "+"))
    assert equals(op_tower(1, -1, -1), family(1, "+"))


def test_double_coset_identity():
    assert double_coset_identity(1, "+")
    assert double_coset_identity(2, "-")


def test_family_self_check():
    rows = family_self_check(1)
    assert len(rows) == 4
    assert all(r["interchanging"] and r["rotation_invariant"] and r["double_coset"] for r in rows)
