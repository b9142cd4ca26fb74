import json

import pytest

from braid_core import BraidError, BraidWord, perm
from garside import canonical_key
from interchange import CANDIDATE_PERMUTATION, is_interchanging, unit_failures
from models import ClassificationResult, RefusalReason, SearchConfig
from search import (
    SearchCapError,
    coset_property_sample,
    parallel_map,
    reduced_extensions,
    report_lines,
    run_search,
    shard_tasks,
    shortlex,
)


def all_words(max_len):
    words = []
    for prefix, length, _ in shard_tasks(max_len, True):
        words.extend(reduced_extensions(prefix, length))
    return words


def interchanging_forms(report):
    return {c.normal_form.to_json() for c in report.interchanging}


def test_shards_cover_reduced_words_once():
    words = all_words(3)
    assert len(words) == 1 + 6 + 30 + 150
    assert len(set(words)) == len(words)
    assert all(w[i] != -w[i + 1] for w in words for i in range(len(w) - 1))


def test_shards_for_length_one():
    assert sorted(all_words(1), key=shortlex) == [(), (-3,), (-2,), (-1,), (1,), (2,), (3,)]


def test_parallel_map_keeps_order():
    assert parallel_map(abs, [-3, 1, -2], 1) == [3, 1, 2]
    assert parallel_map(abs, [-3, 1, -2], 2) == [3, 1, 2]


def test_length_one_finds_both_generators():
    report = run_search(SearchConfig(max_len=1))
    assert report.family_members() == [(0, "+"), (0, "-")]
    assert [c.witness for c in report.interchanging] == ["4: -2", "4: 2"]
    assert report.words_enumerated == 7
    assert report.anomalies == []
    assert report.screen_violations == []


@pytest.mark.parametrize("screens", [True, False])
def test_length_three(screens):
    report = run_search(SearchConfig(max_len=3, screens_enabled=screens))
    assert report.family_members() == [(0, "+"), (0, "-")]
    assert report.anomalies == []
    assert report.words_enumerated == 187


def test_screens_only_drop_work():
    with_screens = run_search(SearchConfig(max_len=3))
    without = run_search(SearchConfig(max_len=3, screens_enabled=False))
    assert with_screens.candidates == without.candidates
    assert with_screens.candidate_classes <= without.candidate_classes


def test_parallel_search_matches_serial():
    serial = run_search(SearchConfig(max_len=4))
    parallel = run_search(SearchConfig(max_len=4, workers=2))
    assert report_lines(parallel) == report_lines(serial)


def test_classes_grow_with_length():
    shorter = run_search(SearchConfig(max_len=3, screens_enabled=False))
    longer = run_search(SearchConfig(max_len=4, screens_enabled=False))
    assert interchanging_forms(shorter) <= interchanging_forms(longer)
    assert shorter.candidate_classes <= longer.candidate_classes


def test_words_of_one_class_share_a_verdict():
    groups = {}
    for letters in all_words(3):
        b = BraidWord.of(4, letters)
        if perm(b) == CANDIDATE_PERMUTATION and not unit_failures(b):
            groups.setdefault(canonical_key(b), []).append(letters)
    report = run_search(SearchConfig(max_len=3, screens_enabled=False))
    assert report.candidate_classes == len(groups)
    for members in groups.values():
        verdicts = {is_interchanging(BraidWord.of(4, letters)).interchanging for letters in members}
        assert len(verdicts) == 1
    witnesses = {min(members, key=shortlex) for members in groups.values()}
    assert all(BraidWord.from_text(c.witness).letters in witnesses for c in report.interchanging)


def test_unscreened_search_reports_screen_violations(mocker, caplog):
    mocker.patch("search.screens_refute", return_value=True)
    report = run_search(SearchConfig(max_len=1, screens_enabled=False))
    assert report.screen_violations == ["4: -2", "4: 2"]
    assert "obstruction screen rules it out" in caplog.text
    screened = run_search(SearchConfig(max_len=1))
    assert screened.interchanging == []
    assert screened.screen_violations == []


def test_cap_enforced():
    with pytest.raises(SearchCapError):
        run_search(SearchConfig(max_len=10))


def test_anomalies_are_reported(mocker, caplog):
    refusal = ClassificationResult(
        word="4: 2", in_family=False, reason=RefusalReason.ASSOCIATIVITY_FAILURE
    )
    mocker.patch("search.classify", return_value=refusal)
    report = run_search(SearchConfig(max_len=1))
    assert report.anomalies == ["4: -2", "4: 2"]
    assert "Anomaly" in caplog.text


def test_report_written_as_json_lines(tmp_path):
    path = tmp_path / "search.jsonl"
    report = run_search(SearchConfig(max_len=1, output_path=str(path)))
    lines = path.read_text().splitlines()
    assert lines == report_lines(report)
    records = [json.loads(line) for line in lines]
    assert records[0]["normal_form"] == {"strands": 4, "delta": -1, "factors": [[4, 2, 3, 1]]}
    assert records[-1]["summary"]["interchanging_classes"] == 2
    assert records[-1]["summary"]["anomalies"] == []


def test_unwritable_output(tmp_path):
    with pytest.raises(OSError):
        run_search(SearchConfig(max_len=1, output_path=str(tmp_path)))


def test_coset_sample_box():
    report = coset_property_sample(1, 1)
    assert report.sampled == 27
    assert report.violations == []
    member = next(s for s in report.samples if (s.h, s.a, s.c) == (1, -1, -1))
    assert member.internal_assoc
    assert member.unit_failures == []
    assert member.word == "4: 2 1 3 2 2 -1 -3"


def test_coset_sample_records_unit_failures():
    report = coset_property_sample(0, 1)
    sample = next(s for s in report.samples if (s.h, s.a, s.c) == (0, 1, 0))
    assert sample.unit_failures != []


def test_coset_sample_bounds():
    with pytest.raises(BraidError):
        coset_property_sample(-1, 0)
