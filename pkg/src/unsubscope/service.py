"""Session-scoped HTTP API: upload, filter, decide, chart, export.

Sessions live in memory only and expire after an idle TTL. Filter state is
client-owned (query parameters); the server stores just the package, the
decision edits, and the metrics derived from them. Mutations are serialized
per session and every response is built from a consistent snapshot.
"""
from __future__ import annotations

import json
import os
import secrets
import threading
import time
from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from starlette.datastructures import UploadFile

from . import charts, decisions, filters, ingest
from .errors import IngestError, InvalidRange, UnknownChartId, UnknownKey, ZeroPackageUsage
from .metrics import (
    DEFAULT_WEIGHTS,
    MetricsConfig,
    PackageMetrics,
    Weights,
    recompute_all,
)
from .model import Package, SubscribedStatus

API_PREFIX = "/api/v1"


@dataclass(frozen=True)
class ServiceConfig:
    max_upload_bytes: int = 50 * 1024 * 1024
    session_ttl_seconds: float = 2 * 60 * 60
    weights: Weights = DEFAULT_WEIGHTS
    metrics_config: MetricsConfig = MetricsConfig()

    @classmethod
    def from_env(cls, env: dict[str, str] | None = None) -> ServiceConfig:
        env = dict(os.environ if env is None else env)
        kwargs: dict = {}
        if "UNSUBSCOPE_MAX_UPLOAD_BYTES" in env:
            kwargs["max_upload_bytes"] = int(env["UNSUBSCOPE_MAX_UPLOAD_BYTES"])
        if "UNSUBSCOPE_SESSION_TTL" in env:
            kwargs["session_ttl_seconds"] = float(env["UNSUBSCOPE_SESSION_TTL"])
        if "UNSUBSCOPE_WEIGHTS" in env:
            d, c, a = (float(x) for x in env["UNSUBSCOPE_WEIGHTS"].split(","))
            kwargs["weights"] = Weights(d, c, a)
        if "UNSUBSCOPE_USAGE_SOURCE" in env:
            kwargs["metrics_config"] = MetricsConfig(
                authoritative_usage=env["UNSUBSCOPE_USAGE_SOURCE"]  # type: ignore[arg-type]
            )
        return cls(**kwargs)


@dataclass
class Session:
    id: str
    package: Package
    metrics: PackageMetrics
    weights: Weights
    filter: filters.FilterSpec
    edit_log: list[decisions.EditEntry]
    created_at: float
    last_access: float
    lock: threading.RLock = field(default_factory=threading.RLock)


class SessionStore:
    """In-memory session registry; thread-safe, TTL-evicted."""

    def __init__(self, config: ServiceConfig) -> None:
        self._config = config
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, package: Package) -> Session:
        now = time.time()
        session = Session(
            id=secrets.token_urlsafe(16),
            package=package,
            metrics=recompute_all(package, self._config.weights, self._config.metrics_config),
            weights=self._config.weights,
            filter=filters.FilterSpec(),
            edit_log=[],
            created_at=now,
            last_access=now,
        )
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        self.reap()
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = time.time()
            return session

    def reap(self, now: float | None = None) -> int:
        """Evict sessions idle past the TTL; returns the eviction count."""
        now = time.time() if now is None else now
        ttl = self._config.session_ttl_seconds
        with self._lock:
            stale = [sid for sid, s in self._sessions.items() if now - s.last_access > ttl]
            for sid in stale:
                del self._sessions[sid]
        return len(stale)

    def __len__(self) -> int:
        with self._lock:
            return len(self._sessions)


def _summary_dict(table: decisions.SummaryTable) -> dict:
    return table.as_dict()


def _record_dict(rec, rm) -> dict:
    return {
        "key": rec.key,
        "title": rec.title,
        "issn": rec.issn,
        "price": rec.price,
        "downloads": rec.downloads,
        "citations": rec.citations,
        "authorships": rec.authorships,
        "usage": rm.usage,
        "exported_usage": rec.usage,
        "cpu": rec.cpu,
        "cpu_rank": rm.cpu_rank,
        "oa_percent": rec.oa_percent,
        "backfile_percent": rec.backfile_percent,
        "subjects": list(rec.subjects),
        "status": rec.subscribed.name,
        "current_year_usage": rm.current_year_usage,
        "if_percent": rm.if_percent,
        "normalized_if_cost": rm.normalized_if_cost,
    }


def _bounds_dict(pkg: Package, metrics: PackageMetrics) -> dict:
    if pkg.n == 0:
        return {name: None for name in filters.RANGE_FIELDS}
    return {
        name: (list(rng) if rng else None)
        for name, rng in filters.slider_bounds(pkg, metrics).items()
    }


def _error(status_code: int, detail: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"detail": detail})


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    app = FastAPI(title="unsubscope", version="0.1.0", docs_url=None, redoc_url=None)
    store = SessionStore(config)
    app.state.store = store
    app.state.config = config

    def parse_filter(request: Request) -> filters.FilterSpec:
        return filters.FilterSpec.from_query(dict(request.query_params))

    @app.post(f"{API_PREFIX}/sessions", status_code=201)
    async def create_session(request: Request):
        content_type = request.headers.get("content-type", "")
        data: bytes | None = None
        use_sample = False

        if content_type.startswith("multipart/"):
            form = await request.form()
            upload = form.get("file")
            if isinstance(upload, UploadFile):
                chunks: list[bytes] = []
                size = 0
                while True:
                    chunk = await upload.read(1 << 20)
                    if not chunk:
                        break
                    size += len(chunk)
                    if size > config.max_upload_bytes:
                        return _error(413, "upload exceeds size limit")
                    chunks.append(chunk)
                data = b"".join(chunks)
            elif form.get("source") == "sample":
                use_sample = True
        else:
            body = await request.body()
            if body:
                try:
                    payload = json.loads(body)
                except ValueError:
                    return _error(400, "expected multipart upload or JSON body")
                use_sample = payload.get("source") == "sample"

        if not use_sample and data is None:
            return _error(400, "provide a CSV file or source=sample")

        try:
            package = ingest.load_sample() if use_sample else ingest.parse_export(data)
            session = store.create(package)
        except IngestError as err:
            return _error(400, str(err))
        except ZeroPackageUsage as err:
            return _error(400, str(err))

        report = ingest.validate_package(package)
        return {
            "session_id": session.id,
            "n": package.n,
            "warnings": [
                {"code": w.code, "key": w.key, "detail": w.detail} for w in report.warnings
            ],
            "summary": _summary_dict(decisions.summarize(package)),
            "bounds": _bounds_dict(package, session.metrics),
        }

    @app.get(f"{API_PREFIX}/charts/catalog")
    def get_catalog():
        return {"charts": [d.as_dict() for d in charts.chart_catalog()]}

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/summary")
    def get_summary(session_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            spec = parse_filter(request)
        except (InvalidRange, ValueError) as err:
            return _error(400, str(err))
        with session.lock:
            pkg, metrics = session.package, session.metrics
        view = filters.apply(pkg, spec, metrics)
        return {
            "n": pkg.n,
            "package": _summary_dict(decisions.summarize(pkg)),
            "view": _summary_dict(decisions.summarize(view)),
            "bounds": _bounds_dict(pkg, metrics),
        }

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/journals")
    def get_journals(session_id: str, request: Request, page: int = 1, page_size: int = 100):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            spec = parse_filter(request)
        except (InvalidRange, ValueError) as err:
            return _error(400, str(err))
        if page < 1 or page_size < 1:
            return _error(400, "page and page_size must be >= 1")
        with session.lock:
            pkg, metrics = session.package, session.metrics
        view = filters.apply(pkg, spec, metrics)
        start = (page - 1) * page_size
        rows = [
            _record_dict(rec, metrics.per_record[rec.key])
            for rec in view.records[start : start + page_size]
        ]
        return {"total": view.n, "page": page, "page_size": page_size, "records": rows}

    @app.patch(f"{API_PREFIX}/sessions/{{session_id}}/journals/{{key}}")
    async def patch_status(session_id: str, key: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            payload = json.loads(await request.body())
            status = SubscribedStatus.parse(str(payload["status"]))
        except (ValueError, KeyError, TypeError):
            return _error(422, "body must be JSON with a valid status token")
        try:
            spec = parse_filter(request)
        except (InvalidRange, ValueError) as err:
            return _error(400, str(err))

        with session.lock:
            try:
                session.package = decisions.set_status(
                    session.package, key, status, log=session.edit_log
                )
            except UnknownKey:
                return _error(404, f"unknown journal key {key!r}")
            session.metrics = recompute_all(session.package, session.weights, config.metrics_config)
            pkg, metrics = session.package, session.metrics

        view = filters.apply(pkg, spec, metrics)
        return {
            "key": key,
            "status": status.name,
            "package_summary": _summary_dict(decisions.summarize(pkg)),
            "view_summary": _summary_dict(decisions.summarize(view)),
        }

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/charts/{{chart_id}}")
    def get_chart(session_id: str, chart_id: str, request: Request):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        try:
            spec = parse_filter(request)
        except (InvalidRange, ValueError) as err:
            return _error(400, str(err))
        with session.lock:
            pkg, metrics = session.package, session.metrics
        view = filters.apply(pkg, spec, metrics)
        try:
            chart = charts.build_chart(view, chart_id, metrics)
        except UnknownChartId:
            return _error(404, f"unknown chart {chart_id!r}")
        return JSONResponse(content=chart.to_dict())

    @app.get(f"{API_PREFIX}/sessions/{{session_id}}/export")
    def get_export(session_id: str):
        session = store.get(session_id)
        if session is None:
            return _error(404, "unknown session")
        with session.lock:
            filename, data = decisions.export_csv(session.package)
        return Response(
            content=data,
            media_type="text/csv",
            headers={"Content-Disposition": f'attachment; filename="{filename}"'},
        )

    _mount_static(app)
    return app


def _mount_static(app: FastAPI) -> None:
    static_dir = os.environ.get("UNSUBSCOPE_STATIC_DIR", "")
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")


app = create_app()
