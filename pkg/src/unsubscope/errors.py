"""Exception types raised across the workbench."""
from __future__ import annotations


class UnsubscopeError(Exception):
    """Base class for all workbench errors."""


class IngestError(UnsubscopeError):
    """Base class for CSV ingestion failures."""


class EmptyFile(IngestError):
    def __init__(self) -> None:
        super().__init__("export file contains no header row")


class DuplicateHeader(IngestError):
    def __init__(self, header: str) -> None:
        self.header = header
        super().__init__(f"duplicate header after normalization: {header!r}")


class MissingRequiredColumn(IngestError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"required column {name!r} not found under any known alias")


class RowParseError(IngestError):
    def __init__(self, line: int, column: str | None, reason: str) -> None:
        self.line = line
        self.column = column
        self.reason = reason
        where = f"line {line}" if column is None else f"line {line}, column {column!r}"
        super().__init__(f"{where}: {reason}")


class DegenerateDenominator(UnsubscopeError):
    """A dynamic-weight denominator (total citations or authorships) is zero."""


class ZeroPackageUsage(UnsubscopeError):
    """Instant-fill shares are undefined when the package total usage is zero."""


class UnknownKey(UnsubscopeError):
    def __init__(self, key: str) -> None:
        self.key = key
        super().__init__(f"no journal with key {key!r}")


class InvalidRange(UnsubscopeError):
    def __init__(self, field: str, lo: float, hi: float) -> None:
        self.field = field
        self.lo = lo
        self.hi = hi
        super().__init__(f"invalid {field} range: lo {lo!r} > hi {hi!r}")


class EmptyPackage(UnsubscopeError):
    """Operation requires at least one record."""


class UnknownChartId(UnsubscopeError):
    def __init__(self, chart_id: str) -> None:
        self.chart_id = chart_id
        super().__init__(f"no chart named {chart_id!r} in the catalog")


class EmptyInput(UnsubscopeError):
    """Histogram binning requires at least one value."""
