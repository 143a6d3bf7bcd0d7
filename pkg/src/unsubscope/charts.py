"""Declarative chart specs for the twelve standard graphs.

Each builder turns a filtered View plus computed metrics into a
self-contained Vega-Lite document (schema version pinned below) with the
data inlined, so any grammar-compliant renderer (the web UI, a notebook,
or a file written by the CLI) draws exactly the same picture. Workbench
metadata (catalog id, pan/zoom link group, excluded-row counts) rides in
the document's ``usermeta`` block, which the grammar reserves for that
purpose.
"""
from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass

from .errors import EmptyInput, UnknownChartId
from .filters import View
from .metrics import PackageMetrics, RecordMetrics
from .model import JournalRecord

#: Pinned grammar version; generated documents validate against this schema.
VEGA_LITE_SCHEMA_URL = "https://vega.github.io/schema/vega-lite/v6.json"

STATUS_DOMAIN = ["TRUE", "FALSE", "MAYBE", "BLANK"]
STATUS_RANGE = ["blue", "red", "green", "gray"]

#: Perceptually uniform, dark at rank 1 (most economical) to light at rank N.
CPU_RANK_SCHEME = "viridis"

#: Hover payload carried by every chart's data rows.
TOOLTIP_FIELDS = (
    "title",
    "downloads",
    "citations",
    "authorships",
    "usage",
    "cost",
    "cpu_rank",
    "oa_percent",
    "status",
)

AUTHORSHIP_HISTOGRAM_BINS = 20
CPU_BOX_BINS = 10

LINK_GROUP_USAGE_COMPONENTS = "usage_components"


@dataclass(frozen=True)
class ChartDescriptor:
    chart_id: str
    title: str
    mark: str  # point | bar | rect
    x_field: str
    y_field: str
    x_scale: str  # linear | log
    y_scale: str
    color: str  # status | cpu_rank | none
    link_group: str | None = None

    def as_dict(self) -> dict:
        return {
            "chart_id": self.chart_id,
            "title": self.title,
            "mark": self.mark,
            "x_field": self.x_field,
            "y_field": self.y_field,
            "x_scale": self.x_scale,
            "y_scale": self.y_scale,
            "color": self.color,
            "link_group": self.link_group,
        }


_CATALOG: tuple[ChartDescriptor, ...] = (
    ChartDescriptor(
        "usage_vs_cost_by_status", "Weighted usage vs. subscription cost",
        "point", "cost", "usage", "linear", "linear", "status",
    ),
    ChartDescriptor(
        "usage_vs_cost_by_cpu_rank", "Weighted usage vs. subscription cost, shaded by CPU rank",
        "point", "cost", "usage", "linear", "linear", "cpu_rank",
    ),
    ChartDescriptor(
        "authorship_histogram", "Authorship count distribution",
        "bar", "authorships", "count", "linear", "linear", "none",
    ),
    ChartDescriptor(
        "citations_vs_downloads", "Citations vs. downloads",
        "point", "downloads", "citations", "linear", "linear", "status",
    ),
    ChartDescriptor(
        "usage_vs_downloads", "Weighted usage vs. downloads",
        "point", "downloads", "usage", "linear", "linear", "status",
        link_group=LINK_GROUP_USAGE_COMPONENTS,
    ),
    ChartDescriptor(
        "usage_vs_citations", "Weighted usage vs. citations",
        "point", "citations", "usage", "linear", "linear", "status",
        link_group=LINK_GROUP_USAGE_COMPONENTS,
    ),
    ChartDescriptor(
        "usage_vs_authorships", "Weighted usage vs. authorships",
        "point", "authorships", "usage", "linear", "linear", "status",
        link_group=LINK_GROUP_USAGE_COMPONENTS,
    ),
    ChartDescriptor(
        "usage_vs_oa_percent", "Weighted usage vs. open-access availability",
        "point", "oa_percent", "usage", "linear", "linear", "status",
        link_group=LINK_GROUP_USAGE_COMPONENTS,
    ),
    ChartDescriptor(
        "if_vs_cost", "Instant-fill share vs. subscription cost",
        "point", "cost", "if_percent", "linear", "linear", "status",
    ),
    ChartDescriptor(
        "normalized_if_vs_log_cost", "Cost per instant-fill point vs. subscription cost",
        "point", "cost", "normalized_if_cost", "log", "linear", "status",
    ),
    ChartDescriptor(
        "cpu_histogram_boxes", "Titles stacked by cost-per-use bin",
        "rect", "cpu_bin_lo", "stack", "linear", "linear", "status",
    ),
    ChartDescriptor(
        "subject_chart", "Journals by subject area and CPU rank",
        "point", "cpu_rank", "subject", "linear", "linear", "status",
    ),
)

_CATALOG_INDEX = {d.chart_id: i for i, d in enumerate(_CATALOG)}

_AXIS_TITLES = {
    "cost": "Subscription cost (USD)",
    "usage": "Weighted usage",
    "downloads": "Downloads",
    "citations": "Citations",
    "authorships": "Authorships",
    "oa_percent": "Open access (%)",
    "if_percent": "Instant fill (% of package)",
    "normalized_if_cost": "Cost per instant-fill point (USD)",
    "cpu_rank": "CPU rank",
    "cpu_bin_lo": "Cost per use (USD)",
    "stack": "Titles in bin",
    "subject": "Subject area",
    "count": "Titles",
}


def chart_catalog() -> tuple[ChartDescriptor, ...]:
    """The twelve charts, in display order. Stable across runs."""
    return _CATALOG


def histogram_bins(values: list[float], bin_count: int) -> list[tuple[float, float, int]]:
    """Equal-width bins over [min, max]; half-open except the final bin.

    Every value lands in exactly one bin, so counts sum to the input size.
    A degenerate extent (all values equal) collapses to one occupied bin.
    """
    if not values:
        raise EmptyInput("histogram needs at least one value")
    if bin_count < 1:
        raise ValueError(f"bin_count must be >= 1, got {bin_count}")
    lo, hi = min(values), max(values)
    if lo == hi:
        return [(lo, hi, len(values))]
    edges = [lo + (hi - lo) * i / bin_count for i in range(bin_count + 1)]
    counts = [0] * bin_count
    for v in values:
        idx = min(bisect_right(edges, v) - 1, bin_count - 1)
        counts[idx] += 1
    return [(edges[i], edges[i + 1], counts[i]) for i in range(bin_count)]


def explode_subjects(view: View) -> list[tuple[str, JournalRecord]]:
    """One (subject, record) pair per assignment; no subject -> Unclassified."""
    pairs: list[tuple[str, JournalRecord]] = []
    for rec in view.records:
        for subject in rec.subjects or ("Unclassified",):
            pairs.append((subject, rec))
    return pairs


@dataclass(frozen=True)
class CpuBox:
    key: str
    title: str
    status: str
    cpu: float
    stack_index: int


@dataclass(frozen=True)
class CpuBin:
    lo: float
    hi: float
    boxes: tuple[CpuBox, ...]


@dataclass(frozen=True)
class CpuBoxGrid:
    bins: tuple[CpuBin, ...]
    bin_width: float


def cpu_boxes(view: View, bin_width: float) -> CpuBoxGrid:
    """One unit box per record, stacked inside its cost-per-use bin.

    Boxes within a bin stack in rank order (ascending cpu, ties by title
    then key), bottom to top.
    """
    if bin_width <= 0:
        raise ValueError(f"bin_width must be positive, got {bin_width}")
    records = view.records
    if not records:
        return CpuBoxGrid(bins=(), bin_width=bin_width)

    lo = min(r.cpu for r in records)
    hi = max(r.cpu for r in records)
    n_bins = max(1, math.ceil(round((hi - lo) / bin_width, 9)))
    members: list[list[JournalRecord]] = [[] for _ in range(n_bins)]
    for rec in records:
        idx = min(int((rec.cpu - lo) / bin_width), n_bins - 1)
        members[idx].append(rec)

    bins = []
    for i, group in enumerate(members):
        group.sort(key=lambda r: (r.cpu, r.title, r.key))
        boxes = tuple(
            CpuBox(r.key, r.title, r.subscribed.name, r.cpu, stack_index=j)
            for j, r in enumerate(group)
        )
        bins.append(CpuBin(lo=lo + i * bin_width, hi=lo + (i + 1) * bin_width, boxes=boxes))
    return CpuBoxGrid(bins=tuple(bins), bin_width=bin_width)


@dataclass(frozen=True)
class ChartSpec:
    descriptor: ChartDescriptor
    data: tuple[dict, ...]
    excluded_undefined: int = 0
    excluded_nonpositive_log: int = 0

    @property
    def chart_id(self) -> str:
        return self.descriptor.chart_id

    def to_dict(self) -> dict:
        d = self.descriptor
        doc: dict = {
            "$schema": VEGA_LITE_SCHEMA_URL,
            "usermeta": {
                "chart_id": d.chart_id,
                "catalog_index": _CATALOG_INDEX[d.chart_id],
                "link_group": d.link_group,
                "excluded_undefined_rows": self.excluded_undefined,
                "excluded_nonpositive_log_rows": self.excluded_nonpositive_log,
            },
            "title": d.title,
            "data": {"values": list(self.data)},
            "mark": {"type": d.mark},
            "encoding": self._encoding(),
        }
        if d.mark == "point":
            doc["mark"]["filled"] = True
            doc["params"] = [{"name": "pan_zoom", "select": "interval", "bind": "scales"}]
        return doc

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    def _encoding(self) -> dict:
        d = self.descriptor
        enc: dict = {}

        if d.chart_id == "authorship_histogram":
            bin_def = {"maxbins": AUTHORSHIP_HISTOGRAM_BINS}
            enc["x"] = {
                "field": "authorships",
                "type": "quantitative",
                "bin": bin_def,
                "title": _AXIS_TITLES["authorships"],
            }
            enc["y"] = {"aggregate": "count", "type": "quantitative", "title": _AXIS_TITLES["count"]}
            enc["tooltip"] = [
                {"field": "authorships", "type": "quantitative", "bin": bin_def},
                {"aggregate": "count", "type": "quantitative", "title": _AXIS_TITLES["count"]},
            ]
            return enc

        if d.chart_id == "cpu_histogram_boxes":
            enc["x"] = {
                "field": "cpu_bin_lo",
                "type": "quantitative",
                "title": _AXIS_TITLES["cpu_bin_lo"],
            }
            enc["x2"] = {"field": "cpu_bin_hi"}
            enc["y"] = {"field": "stack", "type": "quantitative", "title": _AXIS_TITLES["stack"]}
            enc["y2"] = {"field": "stack_end"}
        else:
            x_type = "nominal" if d.x_field == "subject" else "quantitative"
            y_type = "nominal" if d.y_field == "subject" else "quantitative"
            enc["x"] = {"field": d.x_field, "type": x_type, "title": _AXIS_TITLES[d.x_field]}
            enc["y"] = {"field": d.y_field, "type": y_type, "title": _AXIS_TITLES[d.y_field]}
            if d.x_scale == "log":
                enc["x"]["scale"] = {"type": "log"}
            if d.y_scale == "log":
                enc["y"]["scale"] = {"type": "log"}

        if d.color == "status":
            enc["color"] = {
                "field": "status",
                "type": "nominal",
                "title": "Subscribed",
                "scale": {"domain": STATUS_DOMAIN, "range": STATUS_RANGE},
            }
        elif d.color == "cpu_rank":
            enc["color"] = {
                "field": "cpu_rank",
                "type": "quantitative",
                "title": _AXIS_TITLES["cpu_rank"],
                "scale": {"scheme": CPU_RANK_SCHEME},
            }

        enc["tooltip"] = [
            {"field": f, "type": "nominal" if f in ("title", "status") else "quantitative"}
            for f in TOOLTIP_FIELDS
        ]
        return enc


def _base_row(rec: JournalRecord, rm: RecordMetrics) -> dict:
    return {
        "title": rec.title,
        "downloads": rec.downloads,
        "citations": rec.citations,
        "authorships": rec.authorships,
        "usage": rm.usage,
        "cost": rec.price,
        "cpu_rank": rm.cpu_rank,
        "oa_percent": rec.oa_percent,
        "status": rec.subscribed.name,
    }


def build_chart(view: View, chart_id: str, metrics: PackageMetrics) -> ChartSpec:
    """Build one catalog chart over a filtered view.

    Data rows carry the encoded fields plus the hover payload. The
    normalized-cost chart drops records with an undefined normalized cost;
    log-scaled axes additionally drop non-positive values, and both counts
    are recorded on the ChartSpec.
    """
    descriptor = next((d for d in _CATALOG if d.chart_id == chart_id), None)
    if descriptor is None:
        raise UnknownChartId(chart_id)

    def rm_for(rec: JournalRecord) -> RecordMetrics:
        rm = metrics.per_record.get(rec.key)
        if rm is None:
            # View built over a package the metrics were not computed for.
            raise KeyError(f"no metrics for record {rec.key!r}")
        return rm

    rows: list[dict] = []
    excluded_undefined = 0
    excluded_log = 0

    if chart_id == "subject_chart":
        for subject, rec in explode_subjects(view):
            row = _base_row(rec, rm_for(rec))
            row["subject"] = subject
            rows.append(row)
    elif chart_id == "cpu_histogram_boxes":
        extent = [r.cpu for r in view.records]
        if extent:
            span = max(extent) - min(extent)
            width = span / CPU_BOX_BINS if span > 0 else 1.0
            grid = cpu_boxes(view, width)
            rec_by_key = {r.key: r for r in view.records}
            for b in grid.bins:
                for box in b.boxes:
                    rec = rec_by_key[box.key]
                    row = _base_row(rec, rm_for(rec))
                    row.update(
                        cpu_bin_lo=b.lo,
                        cpu_bin_hi=b.hi,
                        stack=box.stack_index,
                        stack_end=box.stack_index + 1,
                    )
                    rows.append(row)
    else:
        for rec in view.records:
            rm = rm_for(rec)
            row = _base_row(rec, rm)
            if chart_id == "if_vs_cost":
                row["if_percent"] = rm.if_percent
            elif chart_id == "normalized_if_vs_log_cost":
                if rm.normalized_if_cost is None:
                    excluded_undefined += 1
                    continue
                row["normalized_if_cost"] = rm.normalized_if_cost
            if descriptor.x_scale == "log" and row[descriptor.x_field] <= 0:
                excluded_log += 1
                continue
            if descriptor.y_scale == "log" and row[descriptor.y_field] <= 0:
                excluded_log += 1
                continue
            rows.append(row)

    return ChartSpec(
        descriptor=descriptor,
        data=tuple(rows),
        excluded_undefined=excluded_undefined,
        excluded_nonpositive_log=excluded_log,
    )
