"""FastAPI service wrapping the analysis pipelines.

Two apps live here. ``create_api_app`` exposes validate / explore /
compare / report over HTTP with pydantic request and response models;
the CLI calls the same ``run_*`` handlers in-process. ``create_bundle_app``
is the read-only static server behind ``evotrack serve``: it serves an
emitted bundle directory (and, when available, the explorer UI assets)
and nothing else.
"""

from __future__ import annotations

import os
import socket
from pathlib import Path
from typing import Any, Literal

from fastapi import FastAPI
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import pipeline
from .artifacts import load_project, validate_project
from .bundle import report_to_json, report_to_text
from .errors import EvoTrackError, MissingBundle, PortInUse
from .model import SEVERITY_ERROR

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_MISSING = 2

BUNDLE_FILES = ("exploration.json", "comparison.json")


class IssueModel(BaseModel):
    severity: str
    code: str
    message: str


class ValidateRequest(BaseModel):
    project: str


class ValidateResponse(BaseModel):
    exit_code: int
    issues: list[IssueModel] = []
    errors: list[str] = []


class ExploreRequest(BaseModel):
    project: str
    out_dir: str


class CompareRequest(BaseModel):
    old_project: str
    new_project: str
    out_dir: str


class RunResponse(BaseModel):
    exit_code: int
    out_dir: str | None = None
    errors: list[str] = []
    warnings: list[str] = []


class ReportRequest(BaseModel):
    old_project: str
    new_project: str
    format: Literal["text", "json"] = "text"


class ReportResponse(BaseModel):
    exit_code: int
    errors: list[str] = []
    text: str | None = None
    report: dict[str, Any] | None = None


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, OSError):
        return EXIT_MISSING
    return EXIT_INVALID


def run_validate(request: ValidateRequest) -> ValidateResponse:
    try:
        project = load_project(Path(request.project))
    except (OSError, EvoTrackError) as exc:
        return ValidateResponse(exit_code=_exit_code_for(exc), errors=[str(exc)])
    issues = validate_project(project)
    errors = [i for i in issues if i.severity == SEVERITY_ERROR]
    if not errors:
        code = EXIT_OK
    elif any(i.code == "missing-artifact" for i in errors):
        code = EXIT_MISSING
    else:
        code = EXIT_INVALID
    return ValidateResponse(
        exit_code=code,
        issues=[
            IssueModel(severity=i.severity, code=i.code, message=i.message)
            for i in issues
        ],
    )


def run_explore(request: ExploreRequest) -> RunResponse:
    try:
        loaded = pipeline.load_and_validate(request.project)
        bundle = pipeline.explore_project(loaded)
        out_dir = pipeline.write_exploration(bundle, request.out_dir)
    except (OSError, EvoTrackError) as exc:
        return RunResponse(exit_code=_exit_code_for(exc), errors=[str(exc)])
    return RunResponse(
        exit_code=EXIT_OK,
        out_dir=str(out_dir),
        warnings=[str(w) for w in bundle.warnings],
    )


def run_compare(request: CompareRequest) -> RunResponse:
    try:
        old = pipeline.load_and_validate(request.old_project)
        new = pipeline.load_and_validate(request.new_project)
        bundle = pipeline.compare_projects(old, new)
        out_dir = pipeline.write_comparison(bundle, request.out_dir)
    except (OSError, EvoTrackError) as exc:
        return RunResponse(exit_code=_exit_code_for(exc), errors=[str(exc)])
    return RunResponse(
        exit_code=EXIT_OK,
        out_dir=str(out_dir),
        warnings=[str(w) for w in bundle.warnings],
    )


def run_report(request: ReportRequest) -> ReportResponse:
    try:
        old = pipeline.load_and_validate(request.old_project)
        new = pipeline.load_and_validate(request.new_project)
        bundle = pipeline.compare_projects(old, new)
    except (OSError, EvoTrackError) as exc:
        return ReportResponse(exit_code=_exit_code_for(exc), errors=[str(exc)])
    if request.format == "json":
        return ReportResponse(exit_code=EXIT_OK, report=report_to_json(bundle.report))
    return ReportResponse(
        exit_code=EXIT_OK,
        text=report_to_text(bundle.report, bundle.old_label, bundle.new_label),
    )


def create_api_app() -> FastAPI:
    app = FastAPI(title="evotrack", version="0.1.0")

    @app.get("/api/health")
    def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/api/validate", response_model=ValidateResponse)
    def validate(request: ValidateRequest) -> ValidateResponse:
        return run_validate(request)

    @app.post("/api/explore", response_model=RunResponse)
    def explore(request: ExploreRequest) -> RunResponse:
        return run_explore(request)

    @app.post("/api/compare", response_model=RunResponse)
    def compare(request: CompareRequest) -> RunResponse:
        return run_compare(request)

    @app.post("/api/report", response_model=ReportResponse)
    def report(request: ReportRequest) -> ReportResponse:
        return run_report(request)

    return app


def default_ui_dir() -> Path | None:
    """Locate the explorer UI assets, when the frontend has been built."""
    env = os.environ.get("EVOTRACK_UI_DIR")
    if env:
        path = Path(env)
        return path if path.is_dir() else None
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def create_bundle_app(bundle_dir: str | Path, ui_dir: str | Path | None = None) -> FastAPI:
    """Static, read-only server over an emitted bundle directory.

    Bundle files are served at the root; when UI assets are available
    they are mounted under ``/ui``. There are no dynamic endpoints.
    """
    bundle_dir = Path(bundle_dir)
    if not bundle_dir.is_dir() or not any(
        (bundle_dir / name).is_file() for name in BUNDLE_FILES
    ):
        raise MissingBundle(
            f"{bundle_dir} contains neither exploration.json nor comparison.json"
        )
    app = FastAPI(title="evotrack bundle", version="0.1.0")
    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    app.mount("/", StaticFiles(directory=str(bundle_dir)), name="bundle")
    return app


def ensure_port_free(host: str, port: int) -> None:
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise PortInUse(f"port {port} on {host} is already in use: {exc}") from exc
    finally:
        probe.close()
