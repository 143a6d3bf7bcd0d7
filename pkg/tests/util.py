"""Builders for synthetic rows and packages used across the suite."""
from __future__ import annotations

import csv
import io

from unsubscope.ingest import parse_export
from unsubscope.model import ColumnMap, JournalRecord, Package, SubscribedStatus

#: Minimal header set: every required canonical field under its primary name.
BASE_HEADERS = [
    "issn", "title", "subject", "subscribed", "price", "downloads", "citations",
    "authorships", "usage", "cpu", "cpu_rank", "oa_percent", "backfile_percent",
]


def csv_bytes(rows: list[dict], headers: list[str] | None = None) -> bytes:
    """Render row dicts (keyed by header name) to CSV bytes via the stdlib writer."""
    headers = headers or BASE_HEADERS
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(headers)
    for row in rows:
        writer.writerow([str(row.get(h, "")) for h in headers])
    return buf.getvalue().encode("utf-8")


def package_from_rows(rows: list[dict]) -> Package:
    """Build a package through the real parser from plain row dicts."""
    return parse_export(csv_bytes(rows))


def make_record(i: int = 0, **over) -> JournalRecord:
    """Directly construct a record (no raw cells) for pure-computation tests."""
    values = dict(
        key=f"rec-{i:04d}",
        title=f"Journal {i:04d}",
        issn="",
        price=100.0 + i,
        downloads=50.0 * (i + 1),
        citations=float(i),
        authorships=float(i % 3),
        usage=0.0,
        cpu=1.0 + i,
        cpu_rank=None,
        oa_percent=0.0,
        backfile_percent=0.0,
        subjects=(),
        subscribed=SubscribedStatus.BLANK,
        raw=(),
    )
    values.update(over)
    if "usage" not in over:
        values["usage"] = values["downloads"] + 10 * values["citations"] + 100 * values["authorships"]
    return JournalRecord(**values)


def make_package(records: list[JournalRecord]) -> Package:
    cmap = ColumnMap(
        fields={name: name for name in BASE_HEADERS},
        unknown_headers=(),
        original_headers=tuple(BASE_HEADERS),
        indices={name: i for i, name in enumerate(BASE_HEADERS)},
    )
    return Package(records=tuple(records), column_map=cmap)
