"""Core value types: journal records, packages, and the decision status.

Everything here is an immutable value. Edits produce new objects, so a
parsed package can be shared freely across threads and sessions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import cached_property

from .errors import UnknownKey


class SubscribedStatus(enum.Enum):
    """Four-state renewal decision. BLANK serializes as an empty CSV cell."""

    TRUE = "TRUE"
    FALSE = "FALSE"
    MAYBE = "MAYBE"
    BLANK = ""

    @classmethod
    def decode_cell(cls, text: str) -> tuple[SubscribedStatus, bool]:
        """Decode a raw CSV cell; returns (status, token_was_recognized).

        Matching is case-insensitive; empty or whitespace cells are BLANK.
        Any other token maps to BLANK with recognized=False so callers can
        surface a validation warning.
        """
        token = text.strip().upper()
        if token == "":
            return cls.BLANK, True
        for member in (cls.TRUE, cls.FALSE, cls.MAYBE):
            if token == member.value:
                return member, True
        return cls.BLANK, False

    @classmethod
    def parse(cls, token: str) -> SubscribedStatus:
        """Strict parse for API/CLI input: raises ValueError on unknown tokens."""
        t = token.strip().upper()
        if t in ("", "BLANK"):
            return cls.BLANK
        for member in (cls.TRUE, cls.FALSE, cls.MAYBE):
            if t == member.value:
                return member
        raise ValueError(f"unknown subscribed status {token!r}")

    @property
    def csv_value(self) -> str:
        return self.value


#: Display and serialization order used by summaries and the API.
STATUS_ORDER = (
    SubscribedStatus.TRUE,
    SubscribedStatus.FALSE,
    SubscribedStatus.MAYBE,
    SubscribedStatus.BLANK,
)


@dataclass(frozen=True)
class ColumnMap:
    """Resolution of canonical fields to the source file's headers.

    ``fields`` maps each canonical field name to the original header text it
    was resolved from; ``unknown_headers`` lists unmatched headers in file
    order so exports can reproduce them losslessly.
    """

    fields: dict[str, str]
    unknown_headers: tuple[str, ...]
    original_headers: tuple[str, ...]
    indices: dict[str, int]

    def index_of(self, canonical: str) -> int:
        return self.indices[canonical]


@dataclass(frozen=True)
class JournalRecord:
    """One journal title with its exported metrics.

    ``raw`` keeps the row's original cells (in original column order) so an
    export can reproduce the input byte-for-byte apart from decision edits.
    """

    key: str
    title: str
    issn: str
    price: float
    downloads: float
    citations: float
    authorships: float
    usage: float
    cpu: float
    cpu_rank: int | None
    oa_percent: float
    backfile_percent: float
    subjects: tuple[str, ...]
    subscribed: SubscribedStatus
    raw: tuple[str, ...] = ()

    def with_status(self, status: SubscribedStatus) -> JournalRecord:
        return replace(self, subscribed=status)


@dataclass(frozen=True)
class Package:
    """Ordered collection of journal records parsed from one export file."""

    records: tuple[JournalRecord, ...]
    column_map: ColumnMap

    @property
    def n(self) -> int:
        return len(self.records)

    @property
    def total_weighted_usage(self) -> float:
        return sum(r.usage for r in self.records)

    @cached_property
    def _by_key(self) -> dict[str, int]:
        return {r.key: i for i, r in enumerate(self.records)}

    def __contains__(self, key: str) -> bool:
        return key in self._by_key

    def record(self, key: str) -> JournalRecord:
        try:
            return self.records[self._by_key[key]]
        except KeyError:
            raise UnknownKey(key) from None

    def replace_record(self, key: str, record: JournalRecord) -> Package:
        idx = self._by_key.get(key)
        if idx is None:
            raise UnknownKey(key)
        records = self.records[:idx] + (record,) + self.records[idx + 1 :]
        return replace(self, records=records)
