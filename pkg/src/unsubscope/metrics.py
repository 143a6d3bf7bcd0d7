"""Derived demand and fulfillment metrics.

Weighted usage combines downloads, citations, and authorships under a
weight triple (default 1/10/100). Current-year usage is the share of a
journal's weighted usage that only an active subscription can satisfy,
and the instant-fill share expresses that demand in percentage points of
the whole package's weighted usage. All functions are pure.
"""
from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, field
from typing import Literal

from .errors import DegenerateDenominator, EmptyPackage, ZeroPackageUsage
from .model import JournalRecord, Package


class OverlappingFulfillment(UserWarning):
    """oa% + backfile% exceeded 100; current-year usage clamped to zero."""


@dataclass(frozen=True)
class Weights:
    """Coefficients applied to downloads, citations, and authorships."""

    w_download: float = 1.0
    w_citation: float = 10.0
    w_authorship: float = 100.0

    def __post_init__(self) -> None:
        for name, value in (
            ("w_download", self.w_download),
            ("w_citation", self.w_citation),
            ("w_authorship", self.w_authorship),
        ):
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")

    def scaled(self, k: float) -> Weights:
        return Weights(self.w_download * k, self.w_citation * k, self.w_authorship * k)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.w_download, self.w_citation, self.w_authorship)


DEFAULT_WEIGHTS = Weights()


@dataclass(frozen=True)
class MetricsConfig:
    """Product switches that do not change the computation chain itself.

    authoritative_usage picks which usage number views and charts display
    and filter on: the file's exported column or the value recomputed under
    the current weights. The instant-fill chain always runs on recomputed
    values so weight changes propagate consistently.
    """

    authoritative_usage: Literal["exported", "recomputed"] = "recomputed"


DEFAULT_CONFIG = MetricsConfig()


def weighted_usage(rec: JournalRecord, w: Weights = DEFAULT_WEIGHTS) -> float:
    return w.w_download * rec.downloads + w.w_citation * rec.citations + w.w_authorship * rec.authorships


def dynamic_weights(pkg: Package) -> Weights:
    """Package-relative weights: (1, Σdownloads/Σcitations, Σdownloads/Σauthorships)."""
    total_downloads = sum(r.downloads for r in pkg.records)
    total_citations = sum(r.citations for r in pkg.records)
    total_authorships = sum(r.authorships for r in pkg.records)
    if total_citations <= 0:
        raise DegenerateDenominator("package has zero total citations")
    if total_authorships <= 0:
        raise DegenerateDenominator("package has zero total authorships")
    return Weights(1.0, total_downloads / total_citations, total_downloads / total_authorships)


def _current_year(usage: float, oa_percent: float, backfile_percent: float) -> tuple[float, bool]:
    """Returns (current-year usage, clamped?). Never exceeds usage or drops below 0."""
    fulfilled = oa_percent + backfile_percent
    if fulfilled <= 0.0:
        return usage, False
    residual = (100.0 - fulfilled) * usage / 100.0
    if residual < 0.0:
        return 0.0, True
    return min(usage, residual), False


def current_year_usage(rec: JournalRecord) -> float:
    """Weighted usage that only a current subscription can fulfill.

    Warns OverlappingFulfillment and clamps to 0 when oa% + backfile%
    exceeds 100 (dirty data; a negative residual demand is meaningless).
    """
    value, clamped = _current_year(rec.usage, rec.oa_percent, rec.backfile_percent)
    if clamped:
        _warnings.warn(
            OverlappingFulfillment(
                f"{rec.key}: oa {rec.oa_percent:g} + backfile {rec.backfile_percent:g} > 100"
            ),
            stacklevel=2,
        )
    return value


def instant_fill_percent(rec: JournalRecord, total_weighted_usage: float) -> float:
    """Journal's current-year demand in percentage points of the package total."""
    if total_weighted_usage <= 0:
        raise ZeroPackageUsage("package total weighted usage must be positive")
    return (100.0 * current_year_usage(rec)) / total_weighted_usage


def normalized_if_cost(rec: JournalRecord, if_percent: float) -> float | None:
    """Dollars to buy one instant-fill percentage point; None when share is zero."""
    if if_percent <= 0:
        return None
    return rec.price / if_percent


def compute_cpu_ranks(pkg: Package) -> list[tuple[str, int]]:
    """Rank records 1 (lowest cost-per-use) to N (highest).

    A complete exported rank permutation is trusted as-is; otherwise ranks
    are recomputed from the cpu column with ties broken by title then key.
    Returned in package record order.
    """
    if pkg.n == 0:
        raise EmptyPackage("cannot rank an empty package")

    exported = [r.cpu_rank for r in pkg.records]
    if all(rank is not None for rank in exported) and sorted(exported) == list(range(1, pkg.n + 1)):
        return [(r.key, r.cpu_rank) for r in pkg.records]  # type: ignore[misc]

    by_cpu = sorted(pkg.records, key=lambda r: (r.cpu, r.title, r.key))
    rank_of = {r.key: i + 1 for i, r in enumerate(by_cpu)}
    return [(r.key, rank_of[r.key]) for r in pkg.records]


@dataclass(frozen=True)
class RecordMetrics:
    usage: float
    current_year_usage: float
    if_percent: float
    normalized_if_cost: float | None
    cpu_rank: int


@dataclass(frozen=True)
class PackageMetrics:
    per_record: dict[str, RecordMetrics]
    total_weighted_usage: float
    package_if_percent: float
    overlapping_keys: tuple[str, ...] = field(default=())


def recompute_all(
    pkg: Package,
    w: Weights = DEFAULT_WEIGHTS,
    config: MetricsConfig = DEFAULT_CONFIG,
) -> PackageMetrics:
    """Recompute the full metric chain for a package under the given weights.

    Deterministic: totals are accumulated in record order. Raises
    ZeroPackageUsage when a non-empty package has zero total usage.
    """
    if pkg.n == 0:
        return PackageMetrics(per_record={}, total_weighted_usage=0.0, package_if_percent=0.0)

    usages = {r.key: weighted_usage(r, w) for r in pkg.records}
    total = sum(usages[r.key] for r in pkg.records)
    if total <= 0:
        raise ZeroPackageUsage("package total weighted usage must be positive")

    ranks = dict(compute_cpu_ranks(pkg))
    per_record: dict[str, RecordMetrics] = {}
    overlapping: list[str] = []
    sum_cy = 0.0
    for rec in pkg.records:
        usage = usages[rec.key]
        cy, clamped = _current_year(usage, rec.oa_percent, rec.backfile_percent)
        if clamped:
            overlapping.append(rec.key)
        sum_cy += cy
        ifp = (100.0 * cy) / total
        per_record[rec.key] = RecordMetrics(
            usage=rec.usage if config.authoritative_usage == "exported" else usage,
            current_year_usage=cy,
            if_percent=ifp,
            normalized_if_cost=normalized_if_cost(rec, ifp),
            cpu_rank=ranks[rec.key],
        )

    # sum_cy <= total holds elementwise, so the ratio-first order keeps the
    # package share <= 100 even at the floating-point edge.
    package_if = 100.0 * (sum_cy / total)
    return PackageMetrics(
        per_record=per_record,
        total_weighted_usage=total,
        package_if_percent=package_if,
        overlapping_keys=tuple(overlapping),
    )
