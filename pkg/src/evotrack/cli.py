"""Command-line interface: a thin client over the service layer.

Exit codes: 0 success, 1 invalid content or validation errors, 2 missing
artifact files. Diagnostics go to stderr; requested output (reports) to
stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import service
from .errors import EvoTrackError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evotrack",
        description=(
            "Track a GUI application's evolution: explore one version's "
            "event-handler call graph, or compare two versions from widgets "
            "down to method sources."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    explore = sub.add_parser("explore", help="analyze one project version")
    explore.add_argument("project", help="project manifest (JSON)")
    explore.add_argument("-o", "--out-dir", required=True, help="bundle output directory")

    compare = sub.add_parser("compare", help="compare two project versions")
    compare.add_argument("old_project")
    compare.add_argument("new_project")
    compare.add_argument("-o", "--out-dir", required=True, help="bundle output directory")

    report = sub.add_parser("report", help="print the regression-focus report")
    report.add_argument("old_project")
    report.add_argument("new_project")
    report.add_argument("--format", choices=("text", "json"), default="text")

    validate = sub.add_parser("validate", help="check a project's artifacts")
    validate.add_argument("project")

    serve = sub.add_parser("serve", help="serve an emitted bundle over HTTP")
    serve.add_argument("bundle_dir")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--ui", help="explorer UI asset directory (default: autodetect)")

    api = sub.add_parser("api", help="run the analysis HTTP API")
    api.add_argument("--port", type=int, default=8001)
    api.add_argument("--host", default="127.0.0.1")
    return parser


def _print_diagnostics(errors: list[str], warnings: list[str]) -> None:
    for message in errors:
        print(f"error: {message}", file=sys.stderr)
    for message in warnings:
        print(f"warning: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "explore":
        response = service.run_explore(
            service.ExploreRequest(project=args.project, out_dir=args.out_dir)
        )
        _print_diagnostics(response.errors, response.warnings)
        if response.exit_code == 0:
            print(f"wrote {response.out_dir}", file=sys.stderr)
        return response.exit_code

    if args.command == "compare":
        response = service.run_compare(
            service.CompareRequest(
                old_project=args.old_project,
                new_project=args.new_project,
                out_dir=args.out_dir,
            )
        )
        _print_diagnostics(response.errors, response.warnings)
        if response.exit_code == 0:
            print(f"wrote {response.out_dir}", file=sys.stderr)
        return response.exit_code

    if args.command == "report":
        response = service.run_report(
            service.ReportRequest(
                old_project=args.old_project,
                new_project=args.new_project,
                format=args.format,
            )
        )
        _print_diagnostics(response.errors, [])
        if response.exit_code == 0:
            if args.format == "json":
                print(json.dumps(response.report, indent=2, ensure_ascii=False))
            else:
                print(response.text, end="")
        return response.exit_code

    if args.command == "validate":
        response = service.run_validate(service.ValidateRequest(project=args.project))
        _print_diagnostics(response.errors, [])
        for issue in response.issues:
            print(f"{issue.severity}[{issue.code}]: {issue.message}")
        if response.exit_code == 0:
            print("project is valid" + (" (with warnings)" if response.issues else ""))
        return response.exit_code

    if args.command == "serve":
        return _serve(args)

    if args.command == "api":
        import uvicorn

        try:
            service.ensure_port_free(args.host, args.port)
        except EvoTrackError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        uvicorn.run(service.create_api_app(), host=args.host, port=args.port)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def _serve(args: argparse.Namespace) -> int:
    import uvicorn

    try:
        service.ensure_port_free(args.host, args.port)
        ui_dir = args.ui if args.ui else service.default_ui_dir()
        app = service.create_bundle_app(args.bundle_dir, ui_dir)
    except EvoTrackError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if ui_dir:
        print(f"explorer UI at http://{args.host}:{args.port}/ui/", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
