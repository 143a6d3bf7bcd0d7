"""Decision ledger: status edits, the live summary table, lookup, export.

Edits never touch the parsed input; set_status returns a new package value.
The exported CSV reproduces the original columns and cells except that the
Subscribed column always reflects the current statuses.
"""
from __future__ import annotations

import csv
import io
import random
import string
import time
from dataclasses import dataclass

from .model import STATUS_ORDER, Package, SubscribedStatus

# Non-cryptographic: export names only need uniqueness within a session.
_filename_rng = random.Random()


@dataclass(frozen=True)
class EditEntry:
    key: str
    old: SubscribedStatus
    new: SubscribedStatus
    at: float


def set_status(
    pkg: Package,
    key: str,
    status: SubscribedStatus,
    log: list[EditEntry] | None = None,
) -> Package:
    """Return a package with one record's status replaced; logs the edit.

    Raises UnknownKey for a missing key. Writing the current status back is
    allowed (and still logged) so callers can replay edit histories.
    """
    record = pkg.record(key)
    if log is not None:
        log.append(EditEntry(key=key, old=record.subscribed, new=status, at=time.time()))
    return pkg.replace_record(key, record.with_status(status))


def find_journal(pkg: Package, query: str) -> list[tuple[str, str]]:
    """Case-insensitive substring search over titles.

    Results are ordered by match position, then title; an empty query
    matches nothing.
    """
    needle = query.strip().lower()
    if not needle:
        return []
    hits: list[tuple[int, str, str]] = []
    for rec in pkg.records:
        pos = rec.title.lower().find(needle)
        if pos >= 0:
            hits.append((pos, rec.title, rec.key))
    hits.sort()
    return [(key, title) for _pos, title, key in hits]


@dataclass(frozen=True)
class StatusSummary:
    titles: int
    dollars: float


@dataclass(frozen=True)
class SummaryTable:
    by_status: dict[SubscribedStatus, StatusSummary]
    total_titles: int
    total_dollars: float

    def as_dict(self) -> dict:
        out: dict = {
            status.name: {"titles": s.titles, "dollars": s.dollars}
            for status, s in self.by_status.items()
        }
        out["total_titles"] = self.total_titles
        out["total_dollars"] = self.total_dollars
        return out


def summarize(view) -> SummaryTable:
    """Bucket title counts and price sums by status over ``view.records``.

    Accepts a Package or a filtered View; counts sum to the view size and
    dollars to its total price by construction.
    """
    counts = {status: 0 for status in STATUS_ORDER}
    dollars = {status: 0.0 for status in STATUS_ORDER}
    for rec in view.records:
        counts[rec.subscribed] += 1
        dollars[rec.subscribed] += rec.price
    return SummaryTable(
        by_status={s: StatusSummary(counts[s], dollars[s]) for s in STATUS_ORDER},
        total_titles=sum(counts.values()),
        total_dollars=sum(dollars[s] for s in STATUS_ORDER),
    )


def random_export_name(rng: random.Random | None = None) -> str:
    rng = rng or _filename_rng
    stem = "".join(rng.choices(string.ascii_letters + string.digits, k=12))
    return stem + ".csv"


def export_csv(pkg: Package, rng: random.Random | None = None) -> tuple[str, bytes]:
    """Serialize the package back to CSV under a random 12-character name.

    Headers and cells are written verbatim from the parsed input (original
    order, recognized and passthrough alike); only the Subscribed column is
    rewritten from the current statuses.
    """
    sub_idx = pkg.column_map.index_of("subscribed")
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(pkg.column_map.original_headers)
    for rec in pkg.records:
        cells = list(rec.raw)
        cells[sub_idx] = rec.subscribed.csv_value
        writer.writerow(cells)
    return random_export_name(rng), buf.getvalue().encode("utf-8")
