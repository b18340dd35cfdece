"""HTTP facade over the analysis engine.

Stateless JSON API under /api/v1: the engine is pure over an immutable
KB snapshot held by :class:`KbHolder`; a reload swaps the snapshot
atomically, so every request observes exactly one KB version.  Every
non-2xx response body has the shape
``{"status", "code", "detail", "location"}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .diff import diff_reports, diff_to_document
from .loader import (
    Severity,
    ValidationIssue,
    kb_to_document,
    load_kb,
    profile_from_device_mapping,
    validate_device_mapping,
)
from .model import KnowledgeBase, kb_fingerprint
from .report import ReportFormat, analyze, render

API_PREFIX = "/api/v1"


class KbHolder:
    """Atomic handle on the current KB snapshot."""

    def __init__(self, kb: KnowledgeBase, source_path: Path | None = None):
        self._kb = kb
        self.source_path = source_path

    @property
    def kb(self) -> KnowledgeBase:
        return self._kb

    def swap(self, kb: KnowledgeBase) -> None:
        self._kb = kb

    def reload(self) -> str:
        """Re-read the KB from its source file; returns the new fingerprint."""
        if self.source_path is None:
            raise RuntimeError("no source path to reload from")
        self._kb = load_kb(self.source_path)
        return kb_fingerprint(self._kb)


def _api_error(status: int, code: str, detail: str, location: str | None = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "detail": detail, "location": location},
    )


def _issues_error(issues: list[ValidationIssue]) -> JSONResponse:
    errors = [i for i in issues if i.severity is Severity.ERROR]
    return _api_error(
        status=422,
        code=errors[0].code,
        detail="; ".join(i.message for i in errors),
        location=errors[0].location,
    )


async def _read_json_body(request: Request) -> Any:
    raw = await request.body()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        return _api_error(400, "E_BAD_REQUEST", f"malformed JSON body: {exc}")


def create_app(
    holder: KbHolder,
    cors_origins: list[str] | None = None,
    enable_reload: bool = False,
) -> FastAPI:
    app = FastAPI(title="xca", docs_url=None, redoc_url=None)
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["GET", "POST"],
            allow_headers=["*"],
        )

    @app.exception_handler(RequestValidationError)
    async def _query_validation_handler(request: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        location = ".".join(str(p) for p in first.get("loc", ()))
        return _api_error(422, "E_BAD_REQUEST", first.get("msg", "invalid request"), location)

    @app.get(API_PREFIX + "/kb")
    async def get_kb(request: Request) -> Response:
        kb = holder.kb
        fingerprint = kb_fingerprint(kb)
        etag = f'"{fingerprint}"'
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        doc = kb_to_document(kb)
        body = {
            "version": kb.version,
            "fingerprint": fingerprint,
            "counts": {
                "regulations": len(kb.regulations),
                "goals": len(kb.goals),
                "methods": len(kb.catalog),
            },
            "regulations": doc["regulations"],
            "goals": doc["goals"],
            "catalog": doc["catalog"],
        }
        return Response(
            content=json.dumps(body, sort_keys=True, ensure_ascii=False),
            media_type="application/json",
            headers={"ETag": etag},
        )

    @app.post(API_PREFIX + "/analyze")
    async def post_analyze(
        request: Request,
        cap: int = Query(default=10, ge=1),
        deterministic: bool = Query(default=True),
    ) -> Response:
        body = await _read_json_body(request)
        if isinstance(body, JSONResponse):
            return body
        if not isinstance(body, dict) or set(body) != {"device"}:
            return _api_error(422, "E_SCHEMA", "body must be a mapping with the single key 'device'", "device")
        issues = validate_device_mapping(body["device"], "device")
        if any(i.severity is Severity.ERROR for i in issues):
            return _issues_error(issues)
        profile = profile_from_device_mapping(body["device"])
        report = analyze(profile, holder.kb, cap=cap, deterministic=deterministic)
        return Response(
            content=render(report, ReportFormat.STRUCTURED), media_type="application/json"
        )

    @app.post(API_PREFIX + "/diff")
    async def post_diff(
        request: Request, cap: int = Query(default=10, ge=1)
    ) -> Response:
        body = await _read_json_body(request)
        if isinstance(body, JSONResponse):
            return body
        if not isinstance(body, dict) or set(body) != {"base", "modified"}:
            return _api_error(
                422, "E_SCHEMA", "body must be a mapping with keys 'base' and 'modified'", "base"
            )
        issues = validate_device_mapping(body["base"], "base")
        issues.extend(validate_device_mapping(body["modified"], "modified"))
        if any(i.severity is Severity.ERROR for i in issues):
            return _issues_error(issues)
        kb = holder.kb
        base = analyze(profile_from_device_mapping(body["base"]), kb, cap=cap, deterministic=True)
        modified = analyze(
            profile_from_device_mapping(body["modified"]), kb, cap=cap, deterministic=True
        )
        doc = diff_to_document(diff_reports(base, modified))
        return Response(
            content=json.dumps(doc, sort_keys=True, ensure_ascii=False),
            media_type="application/json",
        )

    if enable_reload:

        @app.post(API_PREFIX + "/admin/reload")
        async def post_reload() -> Response:
            try:
                fingerprint = holder.reload()
            except Exception as exc:  # reload must never take the service down
                return _api_error(409, "E_BAD_REQUEST", f"reload failed: {exc}")
            return JSONResponse({"fingerprint": fingerprint})

    return app
