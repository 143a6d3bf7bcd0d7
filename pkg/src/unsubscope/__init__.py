"""unsubscope: a decision workbench for journal-package renewals.

Parses Unsub export CSV files, computes weighted-usage and instant-fill
metrics, filters and summarizes decision scenarios, generates the twelve
standard chart documents, and serves the whole workflow over HTTP and a
batch CLI.
"""
from __future__ import annotations

from .ingest import load_sample, parse_export, validate_package
from .metrics import DEFAULT_WEIGHTS, Weights, recompute_all
from .model import ColumnMap, JournalRecord, Package, SubscribedStatus

__all__ = [
    "ColumnMap",
    "DEFAULT_WEIGHTS",
    "JournalRecord",
    "Package",
    "SubscribedStatus",
    "Weights",
    "load_sample",
    "parse_export",
    "recompute_all",
    "validate_package",
]

__version__ = "0.1.0"
