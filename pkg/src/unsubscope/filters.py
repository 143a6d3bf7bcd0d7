"""Conjunctive range filtering mirroring the sidebar's dual-sided sliders.

A FilterSpec holds optional closed [lo, hi] ranges per metric plus a status
subset; apply() produces an immutable View (ordered record subset) without
touching the package. The spec round-trips through URL query parameters
for the HTTP API.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import EmptyPackage, InvalidRange
from .metrics import PackageMetrics
from .model import JournalRecord, Package, SubscribedStatus

Range = tuple[float, float]

#: Filterable metrics, in sidebar display order.
RANGE_FIELDS = ("price", "cpu_rank", "downloads", "citations", "authorships", "usage", "oa_percent")

ALL_STATUSES = frozenset(SubscribedStatus)


@dataclass(frozen=True)
class FilterSpec:
    price: Range | None = None
    cpu_rank: Range | None = None
    downloads: Range | None = None
    citations: Range | None = None
    authorships: Range | None = None
    usage: Range | None = None
    oa_percent: Range | None = None
    statuses: frozenset[SubscribedStatus] = ALL_STATUSES

    def __post_init__(self) -> None:
        for name in RANGE_FIELDS:
            rng = getattr(self, name)
            if rng is not None and rng[0] > rng[1]:
                raise InvalidRange(name, rng[0], rng[1])

    @property
    def is_default(self) -> bool:
        return self == FilterSpec()

    def to_query(self) -> dict[str, str]:
        params: dict[str, str] = {}
        for name in RANGE_FIELDS:
            rng = getattr(self, name)
            if rng is not None:
                lo, hi = rng
                if math.isfinite(lo):
                    params[f"{name}_min"] = f"{lo:g}"
                if math.isfinite(hi):
                    params[f"{name}_max"] = f"{hi:g}"
        if self.statuses != ALL_STATUSES:
            params["statuses"] = ",".join(s.name for s in sorted(self.statuses, key=lambda s: s.name))
        return params

    @classmethod
    def from_query(cls, params: Mapping[str, str]) -> FilterSpec:
        """Build a spec from ``{price_min: "40", statuses: "TRUE,MAYBE", ...}``.

        One-sided ranges are completed with ±inf. Raises InvalidRange on a
        reversed range and ValueError on malformed numbers or status tokens.
        """
        kwargs: dict = {}
        for name in RANGE_FIELDS:
            lo_s, hi_s = params.get(f"{name}_min"), params.get(f"{name}_max")
            if lo_s is None and hi_s is None:
                continue
            lo = float(lo_s) if lo_s is not None else -math.inf
            hi = float(hi_s) if hi_s is not None else math.inf
            kwargs[name] = (lo, hi)
        statuses_s = params.get("statuses")
        if statuses_s is not None:
            tokens = [t for t in statuses_s.split(",") if t.strip()]
            kwargs["statuses"] = frozenset(SubscribedStatus.parse(t) for t in tokens)
        return cls(**kwargs)


@dataclass(frozen=True)
class View:
    """Immutable ordered subset of a package's records."""

    records: tuple[JournalRecord, ...]

    @property
    def n(self) -> int:
        return len(self.records)


def _bounds(values: list[float]) -> Range | None:
    return (min(values), max(values)) if values else None


def slider_bounds(pkg: Package, metrics: PackageMetrics | None = None) -> dict[str, Range | None]:
    """Exact data min/max per filterable metric, for slider endpoints.

    With metrics supplied, usage and cpu_rank reflect the effective values
    (recomputed usage, resolved ranks); otherwise the exported columns.
    """
    if pkg.n == 0:
        raise EmptyPackage("no records to derive slider bounds from")

    def values(name: str) -> list[float]:
        out = []
        for rec in pkg.records:
            v = _metric_value(rec, name, metrics)
            if v is not None:
                out.append(float(v))
        return out

    return {name: _bounds(values(name)) for name in RANGE_FIELDS}


def _metric_value(
    rec: JournalRecord, name: str, metrics: PackageMetrics | None
) -> float | int | None:
    if metrics is not None and rec.key in metrics.per_record:
        rm = metrics.per_record[rec.key]
        if name == "usage":
            return rm.usage
        if name == "cpu_rank":
            return rm.cpu_rank
    if name == "cpu_rank":
        return rec.cpu_rank
    return getattr(rec, name)


def apply(source: Package | View, spec: FilterSpec, metrics: PackageMetrics | None = None) -> View:
    """Select records whose metrics fall inside every active closed range.

    Conjunctive across criteria; original order preserved; records missing a
    value for an active range (e.g. no rank) are excluded. Pure: the source
    is never mutated, so filtering a View again is allowed and idempotent.
    """
    active = [(name, getattr(spec, name)) for name in RANGE_FIELDS if getattr(spec, name) is not None]
    selected: list[JournalRecord] = []
    for rec in source.records:
        if rec.subscribed not in spec.statuses:
            continue
        ok = True
        for name, (lo, hi) in active:
            value = _metric_value(rec, name, metrics)
            if value is None or not (lo <= value <= hi):
                ok = False
                break
        if ok:
            selected.append(rec)
    return View(records=tuple(selected))
