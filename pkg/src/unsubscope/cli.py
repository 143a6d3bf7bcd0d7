"""Batch analysis without the service: summarize, edit, chart, export.

Exit codes: 0 success, 1 input-data failure, 2 usage error. Output is
deterministic for a given input so runs can be diffed: tables and JSON
carry no timestamps and chart documents are written with sorted keys.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import charts, decisions, filters, ingest
from .errors import IngestError
from .metrics import DEFAULT_WEIGHTS, MetricsConfig, Weights, recompute_all
from .model import STATUS_ORDER, Package, SubscribedStatus


@dataclass
class CliConfig:
    input_path: Path | None
    use_sample: bool
    edits: list[tuple[str, SubscribedStatus]] = field(default_factory=list)
    weights: Weights = DEFAULT_WEIGHTS
    usage_source: str = "recomputed"
    filter_spec: filters.FilterSpec = field(default_factory=filters.FilterSpec)
    out_dir: Path | None = None
    export_path: Path | None = None
    output_format: str = "table"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="unsubscope",
        description="Analyze an Unsub export file: summary table, chart documents, edited export.",
    )
    parser.add_argument("input", nargs="?", type=Path, help="export CSV path")
    parser.add_argument("--sample", action="store_true", help="use the bundled sample dataset")
    parser.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="TITLE=STATUS",
        help="set a journal's status (TRUE/FALSE/MAYBE/BLANK); repeatable",
    )
    parser.add_argument("--weights", metavar="D,C,A", help="weight triple, default 1,10,100")
    parser.add_argument(
        "--usage-source",
        choices=["exported", "recomputed"],
        default="recomputed",
        help="which usage number views report",
    )
    parser.add_argument("--out-dir", type=Path, help="write the twelve chart documents here")
    parser.add_argument("--export", type=Path, metavar="PATH", help="write the edited CSV here")
    parser.add_argument("--format", choices=["table", "json"], default="table")
    for name in filters.RANGE_FIELDS:
        flag = name.replace("_", "-")
        parser.add_argument(f"--{flag}-min", type=float, dest=f"{name}_min")
        parser.add_argument(f"--{flag}-max", type=float, dest=f"{name}_max")
    parser.add_argument("--statuses", help="comma-separated status subset, e.g. TRUE,MAYBE")
    return parser


def parse_config(argv: list[str]) -> CliConfig:
    """Translate argv into a CliConfig; raises SystemExit(2) on misuse."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if bool(args.input) == bool(args.sample):
        parser.error("provide exactly one of INPUT path or --sample")

    weights = DEFAULT_WEIGHTS
    if args.weights:
        try:
            d, c, a = (float(x) for x in args.weights.split(","))
            weights = Weights(d, c, a)
        except ValueError as err:
            parser.error(f"bad --weights: {err}")

    edits: list[tuple[str, SubscribedStatus]] = []
    for item in args.set:
        name, sep, token = item.partition("=")
        if not sep or not name.strip():
            parser.error(f"bad --set {item!r}: expected TITLE=STATUS")
        try:
            status = SubscribedStatus.parse(token)
        except ValueError as err:
            parser.error(str(err))
        edits.append((name.strip(), status))

    query: dict[str, str] = {}
    for name in filters.RANGE_FIELDS:
        for side in ("min", "max"):
            value = getattr(args, f"{name}_{side}")
            if value is not None:
                query[f"{name}_{side}"] = str(value)
    if args.statuses:
        query["statuses"] = args.statuses
    try:
        filter_spec = filters.FilterSpec.from_query(query)
    except Exception as err:
        parser.error(str(err))

    return CliConfig(
        input_path=args.input,
        use_sample=args.sample,
        edits=edits,
        weights=weights,
        usage_source=args.usage_source,
        filter_spec=filter_spec,
        out_dir=args.out_dir,
        export_path=args.export,
        output_format=args.format,
    )


def _resolve_edit_key(pkg: Package, name: str) -> str | list[str]:
    """Exact key, else unique case-insensitive title match; list = candidates."""
    if name in pkg:
        return name
    matches = [r.key for r in pkg.records if r.title.lower() == name.lower()]
    if len(matches) == 1:
        return matches[0]
    if matches:
        return matches
    return []


def _format_dollars(amount: float) -> str:
    return f"${amount:,.2f}"


def _print_summary(table: decisions.SummaryTable, title: str) -> None:
    print(title)
    print(f"{'status':<8} {'titles':>7} {'dollars':>16}")
    for status in STATUS_ORDER:
        s = table.by_status[status]
        label = status.name if status is not SubscribedStatus.BLANK else "(blank)"
        print(f"{label:<8} {s.titles:>7} {_format_dollars(s.dollars):>16}")
    print(f"{'TOTAL':<8} {table.total_titles:>7} {_format_dollars(table.total_dollars):>16}")


def run(config: CliConfig) -> int:
    try:
        if config.use_sample:
            pkg = ingest.load_sample()
        else:
            pkg = ingest.parse_export(config.input_path.read_bytes())
    except FileNotFoundError:
        print(f"error: no such file: {config.input_path}", file=sys.stderr)
        return 1
    except IngestError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1

    for name, status in config.edits:
        resolved = _resolve_edit_key(pkg, name)
        if isinstance(resolved, list):
            if resolved:
                print(f"error: ambiguous title {name!r}; candidates:", file=sys.stderr)
                for key in resolved:
                    print(f"  {key}: {pkg.record(key).title}", file=sys.stderr)
            else:
                print(f"error: no journal matches {name!r}", file=sys.stderr)
            return 2
        pkg = decisions.set_status(pkg, resolved, status)

    metrics = recompute_all(
        pkg, config.weights, MetricsConfig(authoritative_usage=config.usage_source)
    )
    view = filters.apply(pkg, config.filter_spec, metrics)
    package_summary = decisions.summarize(pkg)
    view_summary = decisions.summarize(view)

    report = ingest.validate_package(pkg)
    for warning in report.warnings:
        print(f"warning: {warning.code}: {warning.key or ''} {warning.detail}", file=sys.stderr)

    if config.output_format == "json":
        payload = {
            "n": pkg.n,
            "total_weighted_usage": metrics.total_weighted_usage,
            "package_if_percent": metrics.package_if_percent,
            "summary": package_summary.as_dict(),
        }
        if not config.filter_spec.is_default:
            payload["view_summary"] = view_summary.as_dict()
            payload["view_n"] = view.n
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _print_summary(package_summary, f"package: {pkg.n} titles")
        if not config.filter_spec.is_default:
            print()
            _print_summary(view_summary, f"filtered view: {view.n} titles")

    if config.out_dir is not None:
        config.out_dir.mkdir(parents=True, exist_ok=True)
        for descriptor in charts.chart_catalog():
            chart = charts.build_chart(view, descriptor.chart_id, metrics)
            path = config.out_dir / f"{descriptor.chart_id}.json"
            path.write_text(chart.to_json() + "\n", encoding="utf-8")
        print(f"wrote 12 chart documents to {config.out_dir}", file=sys.stderr)

    if config.export_path is not None:
        _, data = decisions.export_csv(pkg)
        config.export_path.write_bytes(data)
        print(f"wrote export to {config.export_path}", file=sys.stderr)

    return 0


def main(argv: list[str] | None = None) -> int:
    config = parse_config(sys.argv[1:] if argv is None else argv)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
