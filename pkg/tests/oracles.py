"""Independent brute-force oracles used to freeze and cross-check expectations.

Everything here restates the arithmetic from first principles (exact
fractions and naive scans) and deliberately imports nothing from the
package under test beyond plain value objects passed in by callers.
"""
from __future__ import annotations

from fractions import Fraction


def oracle_weighted_usage(d: float, c: float, a: float, w=(1.0, 10.0, 100.0)) -> float:
    return w[0] * d + w[1] * c + w[2] * a


def oracle_current_year(usage, oa, bf) -> Fraction:
    usage, oa, bf = Fraction(usage), Fraction(oa), Fraction(bf)
    residual = (100 - (oa + bf)) * usage / 100
    return max(Fraction(0), min(usage, residual))


def oracle_if_percent(usage, oa, bf, total) -> Fraction:
    return 100 * oracle_current_year(usage, oa, bf) / Fraction(total)


def oracle_rank_order(rows: list[tuple[float, str, str]]) -> dict[str, int]:
    """rows: (cpu, title, key) -> key -> rank, ascending cpu with title ties."""
    ordered = sorted(rows, key=lambda r: (r[0], r[1], r[2]))
    return {key: i + 1 for i, (_cpu, _title, key) in enumerate(ordered)}


def oracle_filter(rows: list[dict], spec: dict) -> list[dict]:
    """Naive conjunctive scan. spec: {field: (lo, hi)} plus 'statuses': set."""
    out = []
    for row in rows:
        keep = True
        for field, constraint in spec.items():
            if field == "statuses":
                if row["status"] not in constraint:
                    keep = False
                    break
            else:
                lo, hi = constraint
                value = row.get(field)
                if value is None or value < lo or value > hi:
                    keep = False
                    break
        if keep:
            out.append(row)
    return out


def oracle_summary(rows: list[tuple[str, float]]) -> dict[str, tuple[int, float]]:
    """rows: (status_name, price) -> status -> (count, dollar total)."""
    out: dict[str, tuple[int, float]] = {}
    for status, price in rows:
        n, total = out.get(status, (0, 0.0))
        out[status] = (n + 1, total + price)
    return out
