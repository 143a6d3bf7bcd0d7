from __future__ import annotations

import pathlib

import pytest
from hypothesis import HealthCheck, settings

from unsubscope.ingest import load_sample, parse_export
from unsubscope.metrics import recompute_all

settings.register_profile(
    "workbench", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("workbench")

DATA_DIR = pathlib.Path(__file__).parent / "data"
FIXTURE_PATH = DATA_DIR / "fixture_10.csv"


@pytest.fixture(scope="session")
def fixture_bytes() -> bytes:
    return FIXTURE_PATH.read_bytes()


@pytest.fixture(scope="session")
def fixture_package(fixture_bytes):
    return parse_export(fixture_bytes)


@pytest.fixture(scope="session")
def fixture_metrics(fixture_package):
    return recompute_all(fixture_package)


@pytest.fixture(scope="session")
def sample_package():
    return load_sample()


@pytest.fixture(scope="session")
def sample_metrics(sample_package):
    return recompute_all(sample_package)
