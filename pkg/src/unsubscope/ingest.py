"""Parse Unsub export CSV files into immutable packages.

The export format is a single-header-row RFC-4180 CSV. Column headers vary
slightly between export versions, so each canonical field is resolved
through the alias table below; every unmatched column is preserved verbatim
as a passthrough column so a later export loses nothing.
"""
from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from importlib import resources
from typing import IO

from .errors import (
    DuplicateHeader,
    EmptyFile,
    MissingRequiredColumn,
    RowParseError,
)
from .model import ColumnMap, JournalRecord, Package, SubscribedStatus

#: Canonical field -> accepted source headers, in priority order. The first
#: alias present in the file wins; remaining matches stay passthrough.
COLUMN_ALIASES: dict[str, tuple[str, ...]] = {
    "title": ("title", "journal_title", "journal_name"),
    "subscribed": ("subscribed", "subscription_status", "decision"),
    "price": ("price", "subscription_cost", "usd_price", "cost"),
    "downloads": ("downloads", "total_downloads", "downloads_total"),
    "citations": ("citations", "citation_count", "num_citations"),
    "authorships": ("authorships", "authorship_count", "num_authorships"),
    "usage": ("usage", "weighted_usage", "total_usage"),
    "cpu": ("cpu", "ncppu", "cost_per_use", "cpu_dollars"),
    "cpu_rank": ("cpu_rank", "ncppu_rank", "cost_per_use_rank"),
    "oa_percent": ("oa_percent", "free_instant_usage_percent", "open_access_percent", "oa_pct"),
    "backfile_percent": ("backfile_percent", "backfile_pct", "back_catalog_percent"),
    "subject": ("subject", "subjects", "subject_area"),
    "issn": ("issn", "issn_l", "issns"),
}

#: Fields that must resolve for ingestion to succeed. ``issn`` is optional.
REQUIRED_FIELDS: tuple[str, ...] = tuple(f for f in COLUMN_ALIASES if f != "issn")

_NUMERIC_FIELDS = ("price", "downloads", "citations", "authorships", "usage", "cpu")
_PERCENT_FIELDS = ("oa_percent", "backfile_percent")

_SAMPLE_RESOURCE = "sample_export.csv"


def normalize_header(header: str) -> str:
    """Trim, lowercase, and collapse whitespace runs to underscores."""
    return re.sub(r"\s+", "_", header.strip().lower())


def map_headers(headers: list[str]) -> ColumnMap:
    """Resolve canonical fields against a header row via the alias table.

    Raises DuplicateHeader when two headers collide after normalization and
    MissingRequiredColumn when a required field matches no alias.
    """
    normalized = [normalize_header(h) for h in headers]
    seen: dict[str, int] = {}
    for i, name in enumerate(normalized):
        if name in seen:
            raise DuplicateHeader(headers[i])
        seen[name] = i

    fields: dict[str, str] = {}
    indices: dict[str, int] = {}
    claimed: set[int] = set()
    for canonical, aliases in COLUMN_ALIASES.items():
        for alias in aliases:
            idx = seen.get(alias)
            if idx is not None and idx not in claimed:
                fields[canonical] = headers[idx]
                indices[canonical] = idx
                claimed.add(idx)
                break

    for canonical in REQUIRED_FIELDS:
        if canonical not in fields:
            raise MissingRequiredColumn(canonical)

    unknown = tuple(h for i, h in enumerate(headers) if i not in claimed)
    return ColumnMap(
        fields=fields,
        unknown_headers=unknown,
        original_headers=tuple(headers),
        indices=indices,
    )


_CURRENCY_CHARS = "$€£"


def _clean_number(cell: str) -> str:
    text = cell.strip()
    for ch in _CURRENCY_CHARS:
        text = text.replace(ch, "")
    # Thousands separators; exports from spreadsheet tools often carry them.
    text = text.replace(",", "").rstrip("%").strip()
    return text


def _coerce_float(cell: str, line: int, column: str) -> float:
    text = _clean_number(cell)
    if not text:
        return 0.0
    try:
        return float(text)
    except ValueError:
        raise RowParseError(line, column, f"not a number: {cell!r}") from None


def _coerce_rank(cell: str, line: int, column: str) -> int | None:
    text = _clean_number(cell)
    if not text:
        return None
    try:
        value = int(float(text))
    except ValueError:
        raise RowParseError(line, column, f"not a rank: {cell!r}") from None
    return value if value >= 1 else None


def split_subjects(cell: str) -> tuple[str, ...]:
    """Split a multi-subject cell on semicolons, else commas."""
    text = cell.strip()
    if not text:
        return ()
    parts = text.split(";") if ";" in text else text.split(",")
    return tuple(p.strip() for p in parts if p.strip())


def _slug(title: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", title.lower()).strip("-")


def parse_export(data: bytes | IO[bytes]) -> Package:
    """Parse an export byte stream into a Package.

    Row order is preserved; numeric cells are coerced (currency symbols and
    thousands separators stripped, empty cells read as 0); percentages are
    clamped into [0, 100] and negative counts to 0; the original cells are
    retained on each record, so validate_package can still report what was
    clamped and export_csv can reproduce the input.
    """
    if not isinstance(data, bytes):
        data = data.read()
    text = data.decode("utf-8-sig")
    if not text.strip():
        raise EmptyFile()

    reader = csv.reader(io.StringIO(text))
    try:
        headers = next(reader)
    except StopIteration:
        raise EmptyFile() from None
    column_map = map_headers(headers)
    idx = column_map.indices

    def cell(row: list[str], canonical: str) -> str:
        i = idx.get(canonical)
        return row[i] if i is not None else ""

    records: list[JournalRecord] = []
    seen_keys: set[str] = set()
    ordinal = -1
    for row in reader:
        if not row:
            continue
        ordinal += 1
        line = reader.line_num
        if len(row) != len(headers):
            raise RowParseError(line, None, f"expected {len(headers)} cells, got {len(row)}")

        title = cell(row, "title").strip()
        if not title:
            raise RowParseError(line, column_map.fields["title"], "empty title")

        numbers = {
            f: _coerce_float(cell(row, f), line, column_map.fields[f]) for f in _NUMERIC_FIELDS
        }
        for f in _NUMERIC_FIELDS:
            if numbers[f] < 0:
                numbers[f] = 0.0
        percents = {}
        for f in _PERCENT_FIELDS:
            percents[f] = min(100.0, max(0.0, _coerce_float(cell(row, f), line, column_map.fields[f])))

        issn = cell(row, "issn").strip() if "issn" in idx else ""
        key = issn if issn and issn not in seen_keys else f"{_slug(title)}-{ordinal:04d}"
        seen_keys.add(key)

        status, _recognized = SubscribedStatus.decode_cell(cell(row, "subscribed"))
        records.append(
            JournalRecord(
                key=key,
                title=title,
                issn=issn,
                price=numbers["price"],
                downloads=numbers["downloads"],
                citations=numbers["citations"],
                authorships=numbers["authorships"],
                usage=numbers["usage"],
                cpu=numbers["cpu"],
                cpu_rank=_coerce_rank(cell(row, "cpu_rank"), line, column_map.fields["cpu_rank"]),
                oa_percent=percents["oa_percent"],
                backfile_percent=percents["backfile_percent"],
                subjects=split_subjects(cell(row, "subject")),
                subscribed=status,
                raw=tuple(row),
            )
        )

    return Package(records=tuple(records), column_map=column_map)


def load_sample() -> Package:
    """Load the bundled sample package (431 synthetic journal titles)."""
    data = resources.files("unsubscope").joinpath("data").joinpath(_SAMPLE_RESOURCE)
    return parse_export(data.read_bytes())


@dataclass(frozen=True)
class ValidationWarning:
    code: str
    key: str | None
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    warnings: tuple[ValidationWarning, ...]

    @property
    def is_clean(self) -> bool:
        return not self.warnings

    def by_code(self, code: str) -> tuple[ValidationWarning, ...]:
        return tuple(w for w in self.warnings if w.code == code)


def validate_package(pkg: Package) -> ValidationReport:
    """Collect data-quality warnings without mutating the package.

    Reported codes: overlapping_fulfillment (oa% + backfile% > 100),
    duplicate_rank / rank_gap (broken exported rank permutation),
    clamped_value (negative or >100% input coerced), unknown_status.
    """
    warnings: list[ValidationWarning] = []
    idx = pkg.column_map.indices

    def raw_cell(rec: JournalRecord, canonical: str) -> str:
        i = idx.get(canonical)
        if i is None or i >= len(rec.raw):
            return ""
        return rec.raw[i]

    for rec in pkg.records:
        if rec.oa_percent + rec.backfile_percent > 100.0:
            warnings.append(
                ValidationWarning(
                    "overlapping_fulfillment",
                    rec.key,
                    f"oa {rec.oa_percent:g} + backfile {rec.backfile_percent:g} exceeds 100",
                )
            )
        if rec.raw:
            for f in _NUMERIC_FIELDS + _PERCENT_FIELDS:
                text = _clean_number(raw_cell(rec, f))
                if not text:
                    continue
                try:
                    value = float(text)
                except ValueError:
                    continue
                if value < 0 or (f in _PERCENT_FIELDS and value > 100.0):
                    warnings.append(
                        ValidationWarning("clamped_value", rec.key, f"{f} coerced from {value:g}")
                    )
            sub = raw_cell(rec, "subscribed")
            _, recognized = SubscribedStatus.decode_cell(sub)
            if not recognized:
                warnings.append(
                    ValidationWarning("unknown_status", rec.key, f"unrecognized token {sub!r}")
                )

    ranks = [r.cpu_rank for r in pkg.records if r.cpu_rank is not None]
    if ranks:
        seen: set[int] = set()
        for rank in ranks:
            if rank in seen:
                warnings.append(ValidationWarning("duplicate_rank", None, f"rank {rank} assigned twice"))
            seen.add(rank)
        expected = set(range(1, pkg.n + 1))
        if seen != expected and len(seen) == len(ranks):
            missing = sorted(expected - seen)
            if missing:
                warnings.append(
                    ValidationWarning("rank_gap", None, f"missing ranks: {missing[:8]}")
                )

    return ValidationReport(warnings=tuple(warnings))
