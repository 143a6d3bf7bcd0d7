from __future__ import annotations

import re

import pytest

from unsubscope.decisions import (
    EditEntry,
    export_csv,
    find_journal,
    random_export_name,
    set_status,
    summarize,
)
from unsubscope.errors import UnknownKey
from unsubscope.ingest import parse_export
from unsubscope.model import SubscribedStatus

from .oracles import oracle_summary
from .util import make_package, make_record, package_from_rows

FILENAME_RE = re.compile(r"^[A-Za-z0-9]{12}\.csv$")

# Frozen pivot of tests/data/fixture_10.csv: status -> (titles, dollars)
FIXTURE_SUMMARY = {
    "TRUE": (4, 11700.0),
    "FALSE": (2, 5400.0),
    "MAYBE": (2, 2900.0),
    "BLANK": (2, 1400.0),
}
FIXTURE_TOTAL_PRICE = 21400.0


class TestSetStatus:
    def test_replaces_single_status(self, fixture_package):
        pkg = set_status(fixture_package, "aurora-letters-0000", SubscribedStatus.MAYBE)
        assert pkg.record("aurora-letters-0000").subscribed is SubscribedStatus.MAYBE
        # everything else untouched
        for rec, before in zip(pkg.records, fixture_package.records):
            if rec.key != "aurora-letters-0000":
                assert rec == before
            else:
                assert rec.raw == before.raw

    def test_same_status_is_idempotent_but_logged(self, fixture_package):
        log: list[EditEntry] = []
        pkg = set_status(
            fixture_package, "aurora-letters-0000", SubscribedStatus.TRUE, log=log
        )
        assert pkg == fixture_package
        assert len(log) == 1
        assert log[0].old is SubscribedStatus.TRUE
        assert log[0].new is SubscribedStatus.TRUE

    def test_unknown_key_raises(self, fixture_package):
        with pytest.raises(UnknownKey):
            set_status(fixture_package, "nope", SubscribedStatus.TRUE)

    def test_set_and_revert_restores_value_equality(self, fixture_package):
        key = "cobalt-review-0002"
        original = fixture_package.record(key).subscribed
        edited = set_status(fixture_package, key, SubscribedStatus.FALSE)
        reverted = set_status(edited, key, original)
        assert reverted == fixture_package

    def test_input_package_not_mutated(self, fixture_package):
        before = fixture_package.record("aurora-letters-0000").subscribed
        set_status(fixture_package, "aurora-letters-0000", SubscribedStatus.FALSE)
        assert fixture_package.record("aurora-letters-0000").subscribed is before

    def test_sample_editor_scenario(self, sample_package):
        # find by partial name, flip to MAYBE, exactly that record changes
        hits = find_journal(sample_package, "scholar trends")
        assert [title for _k, title in hits] == ["Scholar Trends"]
        key = hits[0][0]
        edited = set_status(sample_package, key, SubscribedStatus.MAYBE)
        assert edited.record(key).subscribed is SubscribedStatus.MAYBE
        changed = [
            r.key for r, before in zip(edited.records, sample_package.records) if r != before
        ]
        assert changed == [key]


class TestFindJournal:
    def test_substring_case_insensitive(self, sample_package):
        hits = find_journal(sample_package, "science adv")
        assert [title for _k, title in hits] == ["Science Advance"]

    def test_empty_query_empty_result(self, sample_package):
        assert find_journal(sample_package, "") == []
        assert find_journal(sample_package, "   ") == []

    def test_no_match(self, sample_package):
        assert find_journal(sample_package, "zzzz-no-match") == []

    def test_ordered_by_match_position_then_title(self):
        pkg = make_package([
            make_record(0, title="Beta Optics"),
            make_record(1, title="Optics Letters"),
            make_record(2, title="Applied Optics Review"),
        ])
        hits = find_journal(pkg, "optics")
        assert [t for _k, t in hits] == ["Optics Letters", "Beta Optics", "Applied Optics Review"]


class TestSummarize:
    def test_empty_view(self):
        table = summarize(make_package([]))
        assert table.total_titles == 0
        assert table.total_dollars == 0.0
        for status_summary in table.by_status.values():
            assert status_summary.titles == 0
            assert status_summary.dollars == 0.0

    def test_three_record_bucketing(self):
        pkg = make_package([
            make_record(0, price=100, subscribed=SubscribedStatus.TRUE),
            make_record(1, price=200, subscribed=SubscribedStatus.FALSE),
            make_record(2, price=300, subscribed=SubscribedStatus.BLANK),
        ])
        table = summarize(pkg)
        assert table.by_status[SubscribedStatus.TRUE].titles == 1
        assert table.by_status[SubscribedStatus.TRUE].dollars == 100.0
        assert table.by_status[SubscribedStatus.FALSE].dollars == 200.0
        assert table.by_status[SubscribedStatus.MAYBE].titles == 0
        assert table.by_status[SubscribedStatus.BLANK].dollars == 300.0
        assert table.total_titles == 3
        assert table.total_dollars == 600.0

    def test_fixture_pivot(self, fixture_package):
        table = summarize(fixture_package)
        for status, (titles, dollars) in FIXTURE_SUMMARY.items():
            got = table.by_status[SubscribedStatus[status]]
            assert (got.titles, got.dollars) == (titles, dollars)
        assert table.total_titles == fixture_package.n
        assert table.total_dollars == FIXTURE_TOTAL_PRICE

    def test_sample_pivot_against_oracle(self, sample_package):
        # independent pivot straight off the parsed rows
        oracle = oracle_summary(
            [(r.subscribed.name, r.price) for r in sample_package.records]
        )
        table = summarize(sample_package)
        for status, summary in table.by_status.items():
            titles, dollars = oracle.get(status.name, (0, 0.0))
            assert summary.titles == titles
            assert summary.dollars == pytest.approx(dollars)

    def test_totals_invariant_after_edits(self, sample_package):
        key = sample_package.records[17].key
        edited = set_status(sample_package, key, SubscribedStatus.FALSE)
        table = summarize(edited)
        assert table.total_titles == sample_package.n
        assert table.total_dollars == pytest.approx(
            sum(r.price for r in sample_package.records)
        )


class TestExport:
    def test_filename_format_and_variation(self, fixture_package):
        name1, data1 = export_csv(fixture_package)
        name2, data2 = export_csv(fixture_package)
        assert FILENAME_RE.match(name1)
        assert FILENAME_RE.match(name2)
        assert name1 != name2
        assert data1 == data2

    def test_unedited_roundtrip_data_region(self, fixture_bytes, fixture_package):
        _, exported = export_csv(fixture_package)
        assert exported.split(b"\r\n", 1)[1] == fixture_bytes.split(b"\r\n", 1)[1]

    def test_single_edit_changes_exactly_one_cell(self, fixture_bytes, fixture_package):
        edited = set_status(fixture_package, "harbor-archives-0007", SubscribedStatus.MAYBE)
        _, exported = export_csv(edited)
        import csv
        import io

        original_rows = list(csv.reader(io.StringIO(fixture_bytes.decode())))
        new_rows = list(csv.reader(io.StringIO(exported.decode())))
        diffs = [
            (i, j)
            for i, (row_a, row_b) in enumerate(zip(original_rows, new_rows))
            for j, (a, b) in enumerate(zip(row_a, row_b))
            if a != b
        ]
        assert len(diffs) == 1
        row_idx, col_idx = diffs[0]
        assert original_rows[0][col_idx] == "subscribed"
        assert new_rows[row_idx][0 if col_idx == 0 else col_idx] == "MAYBE"

    def test_two_edits_change_two_cells(self, fixture_bytes, fixture_package):
        edited = set_status(fixture_package, "harbor-archives-0007", SubscribedStatus.MAYBE)
        edited = set_status(edited, "aurora-letters-0000", SubscribedStatus.FALSE)
        _, exported = export_csv(edited)
        import csv
        import io

        original_rows = list(csv.reader(io.StringIO(fixture_bytes.decode())))
        new_rows = list(csv.reader(io.StringIO(exported.decode())))
        diffs = [
            (i, j)
            for i, (a, b) in enumerate(zip(original_rows, new_rows))
            for j, (x, y) in enumerate(zip(a, b))
            if x != y
        ]
        assert len(diffs) == 2
        assert all(original_rows[0][j] == "subscribed" for _i, j in diffs)

    def test_export_parse_export_is_byte_stable(self, fixture_package):
        _, first = export_csv(fixture_package)
        reparsed = parse_export(first)
        _, second = export_csv(reparsed)
        assert first == second

    def test_maybe_survives_roundtrip(self):
        rows = [dict(title="A", subscribed="MAYBE", price=10, usage=10, downloads=10,
                     citations=0, authorships=0, cpu=1, oa_percent=0,
                     backfile_percent=0, subject="")]
        pkg = package_from_rows(rows)
        _, data = export_csv(pkg)
        assert parse_export(data).records[0].subscribed is SubscribedStatus.MAYBE

    def test_deterministic_name_with_seeded_rng(self):
        import random

        assert random_export_name(random.Random(1)) == random_export_name(random.Random(1))
