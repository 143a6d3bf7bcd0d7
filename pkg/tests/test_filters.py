from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from unsubscope.errors import EmptyPackage, InvalidRange
from unsubscope.filters import RANGE_FIELDS, FilterSpec, apply, slider_bounds
from unsubscope.metrics import recompute_all
from unsubscope.model import SubscribedStatus

from .oracles import oracle_filter
from .util import make_package, make_record

# Frozen min/max of tests/data/fixture_10.csv per filterable metric.
FIXTURE_BOUNDS = {
    "price": (600.0, 5000.0),
    "cpu_rank": None,  # fixture exports no ranks
    "downloads": (0.0, 2500.0),
    "citations": (0.0, 50.0),
    "authorships": (0.0, 5.0),
    "usage": (0.0, 3500.0),
    "oa_percent": (0.0, 60.0),
}


def record_strategy(i: int):
    return st.builds(
        lambda price, d, c, a, oa, status: make_record(
            i, price=price, downloads=d, citations=c, authorships=a,
            oa_percent=oa, cpu=price / max(1.0, d), subscribed=status,
        ),
        st.integers(min_value=0, max_value=30_000),
        st.integers(min_value=0, max_value=9_000),
        st.integers(min_value=0, max_value=500),
        st.integers(min_value=0, max_value=14),
        st.floats(min_value=0, max_value=100),
        st.sampled_from(list(SubscribedStatus)),
    )


def package_strategy(min_size=0, max_size=20):
    return st.integers(min_value=min_size, max_value=max_size).flatmap(
        lambda n: st.tuples(*[record_strategy(i) for i in range(n)]).map(
            lambda recs: make_package(list(recs))
        )
    )


def range_strategy():
    return st.one_of(
        st.none(),
        st.tuples(
            st.integers(min_value=0, max_value=20_000),
            st.integers(min_value=0, max_value=20_000),
        ).map(lambda t: (float(min(t)), float(max(t)))),
    )


def spec_strategy():
    return st.builds(
        FilterSpec,
        price=range_strategy(),
        downloads=range_strategy(),
        citations=range_strategy(),
        usage=range_strategy(),
        oa_percent=range_strategy(),
        statuses=st.sets(st.sampled_from(list(SubscribedStatus)), min_size=1).map(frozenset),
    )


class TestFilterSpec:
    def test_default_selects_everything(self):
        assert FilterSpec().is_default

    def test_reversed_range_rejected(self):
        with pytest.raises(InvalidRange):
            FilterSpec(price=(100.0, 10.0))

    def test_query_roundtrip(self):
        spec = FilterSpec(
            price=(40.0, 9000.0),
            usage=(0.0, 500.0),
            statuses=frozenset({SubscribedStatus.TRUE, SubscribedStatus.MAYBE}),
        )
        again = FilterSpec.from_query(spec.to_query())
        assert again == spec

    def test_from_query_one_sided(self):
        spec = FilterSpec.from_query({"price_min": "100"})
        assert spec.price == (100.0, math.inf)

    def test_from_query_blank_status(self):
        spec = FilterSpec.from_query({"statuses": "BLANK"})
        assert spec.statuses == frozenset({SubscribedStatus.BLANK})

    def test_from_query_bad_status_token(self):
        with pytest.raises(ValueError):
            FilterSpec.from_query({"statuses": "YES"})

    def test_from_query_reversed_range(self):
        with pytest.raises(InvalidRange):
            FilterSpec.from_query({"price_min": "10", "price_max": "5"})


class TestSliderBounds:
    def test_simple_extent(self):
        pkg = make_package([
            make_record(0, price=100), make_record(1, price=250), make_record(2, price=9000),
        ])
        assert slider_bounds(pkg)["price"] == (100.0, 9000.0)

    def test_single_record_degenerate(self):
        pkg = make_package([make_record(0, price=123, downloads=7, citations=0, authorships=0)])
        bounds = slider_bounds(pkg)
        assert bounds["price"] == (123.0, 123.0)
        assert bounds["downloads"] == (7.0, 7.0)

    def test_fixture_oracle(self, fixture_package):
        assert slider_bounds(fixture_package) == FIXTURE_BOUNDS

    def test_fixture_with_metrics_has_rank_bounds(self, fixture_package, fixture_metrics):
        bounds = slider_bounds(fixture_package, fixture_metrics)
        assert bounds["cpu_rank"] == (1.0, 10.0)

    def test_empty_package_raises(self):
        with pytest.raises(EmptyPackage):
            slider_bounds(make_package([]))


class TestApply:
    def test_default_spec_is_identity(self, fixture_package):
        view = apply(fixture_package, FilterSpec())
        assert view.records == fixture_package.records

    def test_zero_usage_band_selects_zero_usage_records(self, fixture_package):
        view = apply(fixture_package, FilterSpec(usage=(0.0, 0.0)))
        assert [r.key for r in view.records] == ["drift-annals-0003"]

    def test_status_filter_empty_result(self):
        pkg = make_package([
            make_record(0, subscribed=SubscribedStatus.TRUE),
            make_record(1, subscribed=SubscribedStatus.BLANK),
        ])
        view = apply(pkg, FilterSpec(statuses=frozenset({SubscribedStatus.FALSE})))
        assert view.n == 0

    def test_closed_interval_includes_endpoints(self):
        pkg = make_package([make_record(0, price=100), make_record(1, price=200)])
        view = apply(pkg, FilterSpec(price=(100.0, 200.0)))
        assert view.n == 2

    def test_missing_rank_excluded_when_rank_filter_active(self, fixture_package):
        view = apply(fixture_package, FilterSpec(cpu_rank=(1.0, 10.0)))
        assert view.n == 0  # fixture exports no ranks
        view_with_metrics = apply(
            fixture_package, FilterSpec(cpu_rank=(1.0, 10.0)), recompute_all(fixture_package)
        )
        assert view_with_metrics.n == fixture_package.n

    def test_rank_filter_uses_effective_ranks(self, sample_package, sample_metrics):
        view = apply(sample_package, FilterSpec(cpu_rank=(1.0, 10.0)), sample_metrics)
        assert view.n == 10

    def test_source_never_mutated(self, fixture_package):
        before = fixture_package.records
        apply(fixture_package, FilterSpec(price=(0.0, 1.0)))
        assert fixture_package.records == before

    @given(package_strategy(), spec_strategy())
    def test_matches_naive_oracle(self, pkg, spec):
        view = apply(pkg, spec)
        spec_dict = {
            name: getattr(spec, name)
            for name in RANGE_FIELDS
            if getattr(spec, name) is not None and name != "cpu_rank"
        }
        spec_dict["statuses"] = {s.name for s in spec.statuses}
        rows = [
            {
                "price": r.price, "downloads": r.downloads, "citations": r.citations,
                "authorships": r.authorships, "usage": r.usage, "oa_percent": r.oa_percent,
                "status": r.subscribed.name, "key": r.key,
            }
            for r in pkg.records
        ]
        expected = [row["key"] for row in oracle_filter(rows, spec_dict)]
        assert [r.key for r in view.records] == expected


class TestFilterLaws:
    @given(package_strategy(), spec_strategy(), spec_strategy())
    def test_monotone_tightening_never_adds(self, pkg, a, b):
        def tighten(x, y):
            if x is None:
                return y
            if y is None:
                return x
            return (max(x[0], y[0]), min(x[1], y[1]))

        fields = {}
        for name in RANGE_FIELDS:
            t = tighten(getattr(a, name), getattr(b, name))
            if t is not None and t[0] > t[1]:
                t = (t[0], t[0])  # keep a valid, still-tighter range
            fields[name] = t
        tighter = FilterSpec(
            **fields, statuses=frozenset(a.statuses & b.statuses) or frozenset({SubscribedStatus.TRUE})
        )
        base_keys = {r.key for r in apply(pkg, a).records}
        tight_keys = {r.key for r in apply(pkg, tighter).records}
        if tighter.statuses <= a.statuses and all(
            _contains(getattr(a, n), fields[n]) for n in RANGE_FIELDS
        ):
            assert tight_keys <= base_keys

    @given(package_strategy(), spec_strategy())
    def test_idempotent(self, pkg, spec):
        once = apply(pkg, spec)
        twice = apply(once, spec)
        assert once == twice

    @given(package_strategy())
    def test_default_spec_identity(self, pkg):
        assert apply(pkg, FilterSpec()).records == pkg.records

    @given(package_strategy(), spec_strategy())
    def test_conjunction_order_independent(self, pkg, spec):
        # applying criteria one at a time, in any order, equals the conjunction
        view_all = apply(pkg, spec)
        staged = pkg
        for name in reversed(RANGE_FIELDS):
            rng = getattr(spec, name)
            if rng is not None:
                staged = apply(staged, FilterSpec(**{name: rng}))
        staged = apply(staged, FilterSpec(statuses=spec.statuses))
        assert [r.key for r in view_all.records] == [r.key for r in staged.records]


def _contains(outer, inner) -> bool:
    if outer is None:
        return True
    if inner is None:
        return False
    return outer[0] <= inner[0] and inner[1] <= outer[1]
