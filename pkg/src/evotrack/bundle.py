"""Serialized result types: exploration and comparison bundles, reports.

Bundles are plain-JSON views of the in-memory types, built from sorted
iterations only, so serializing the same inputs twice yields identical
bytes. Statuses serialize as lowercase strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from .artifacts import gui_model_to_json
from .condense import CondensedGraph
from .graph_diff import SliceDiff, has_changes
from .gui_match import MergedGuiTree, MergedWidget, WidgetStatus
from .model import GuiModel, MethodSig, ValidationIssue
from .slicer import HandlerSlice
from .textdiff import DiffHunk, MethodSourceView


@dataclass(frozen=True)
class ReportCounts:
    added: int
    removed: int
    handler_changed: int
    unchanged: int

    @property
    def total(self) -> int:
        return self.added + self.removed + self.handler_changed + self.unchanged


@dataclass(frozen=True)
class FocusEntry:
    """One widget that needs retesting: where it lives and why."""

    window: str
    path: tuple[int, ...]
    status: WidgetStatus
    handlers: tuple[MethodSig, ...]


@dataclass(frozen=True)
class RegressionReport:
    counts: ReportCounts
    focus_list: tuple[FocusEntry, ...]


@dataclass(frozen=True)
class ExplorationBundle:
    version_label: str
    gui: GuiModel
    slices: Mapping[MethodSig, HandlerSlice]
    sources: Mapping[MethodSig, MethodSourceView]
    warnings: tuple[ValidationIssue, ...]


@dataclass(frozen=True)
class ComparisonBundle:
    old_label: str
    new_label: str
    merged_tree: MergedGuiTree
    handler_diffs: Mapping[tuple[str, MethodSig], SliceDiff]
    condensed: Mapping[tuple[str, MethodSig], CondensedGraph]
    source_diffs: Mapping[MethodSig, tuple[DiffHunk, ...]]
    report: RegressionReport
    warnings: tuple[ValidationIssue, ...]


def build_report(
    tree: MergedGuiTree,
    per_handler_diffs: Mapping[tuple[str, MethodSig], SliceDiff],
) -> RegressionReport:
    """Summarize a propagated merged tree for regression-test planning.

    Counts cover every merged widget; the focus list holds each widget
    whose status is not unchanged, addressed by window title and child
    indices from the window root.
    """
    tally = {status: 0 for status in WidgetStatus}
    focus: list[FocusEntry] = []

    def visit(widget: MergedWidget, window_title: str, path: tuple[int, ...]) -> None:
        tally[widget.status] += 1
        if widget.status is not WidgetStatus.UNCHANGED:
            if widget.status is WidgetStatus.HANDLER_CHANGED:
                affected = tuple(
                    sorted(
                        h
                        for h in widget.handlers
                        if (widget.merged_id, h) in per_handler_diffs
                        and has_changes(per_handler_diffs[(widget.merged_id, h)])
                    )
                )
            else:
                affected = tuple(sorted(widget.handlers))
            focus.append(FocusEntry(window_title, path, widget.status, affected))
        for i, child in enumerate(widget.children):
            visit(child, window_title, path + (i,))

    for window in tree.windows:
        visit(window.root, window.title, ())

    return RegressionReport(
        counts=ReportCounts(
            added=tally[WidgetStatus.ADDED],
            removed=tally[WidgetStatus.REMOVED],
            handler_changed=tally[WidgetStatus.HANDLER_CHANGED],
            unchanged=tally[WidgetStatus.UNCHANGED],
        ),
        focus_list=tuple(focus),
    )


# ---------------------------------------------------------------------------
# JSON views

def slice_to_json(s: HandlerSlice) -> dict[str, Any]:
    return {
        "root": s.root,
        "app_nodes": sorted(s.app_nodes),
        "app_edges": [list(e) for e in sorted(s.app_edges)],
        "abstraction_edges": [
            [caller, category.label]
            for caller, category in sorted(
                s.abstraction_edges, key=lambda e: (e[0], e[1].label)
            )
        ],
    }


def diff_to_json(d: SliceDiff) -> dict[str, Any]:
    return {
        "root": d.root,
        "nodes": {key: d.nodes[key].value for key in sorted(d.nodes)},
        "edges": [
            {"from": src, "to": dst, "status": d.edges[(src, dst)].value}
            for src, dst in sorted(d.edges)
        ],
    }


def condensed_to_json(c: CondensedGraph) -> dict[str, Any]:
    return {
        "visible_nodes": {
            key: c.visible_nodes[key].value for key in sorted(c.visible_nodes)
        },
        "super_nodes": [
            {"id": sn.id, "members": sorted(sn.members), "label": sn.label}
            for sn in c.super_nodes
        ],
        "edges": [
            {
                "from": src,
                "to": dst,
                "statuses": sorted(s.value for s in c.edges[(src, dst)]),
            }
            for src, dst in sorted(c.edges)
        ],
    }


def hunks_to_json(hunks: tuple[DiffHunk, ...]) -> list[dict[str, Any]]:
    return [{"op": h.op.value, "lines": list(h.lines)} for h in hunks]


def merged_widget_to_json(widget: MergedWidget) -> dict[str, Any]:
    return {
        "merged_id": widget.merged_id,
        "status": widget.status.value,
        "old_id": widget.old_id,
        "new_id": widget.new_id,
        "widget_class": widget.widget_class,
        "properties": {k: widget.properties[k] for k in sorted(widget.properties)},
        "handlers": list(widget.handlers),
        "screenshot": widget.screenshot,
        "children": [merged_widget_to_json(c) for c in widget.children],
    }


def merged_tree_to_json(tree: MergedGuiTree) -> dict[str, Any]:
    return {
        "windows": [
            {
                "title": w.title,
                "window_class": w.window_class,
                "status": w.status,
                "root": merged_widget_to_json(w.root),
            }
            for w in tree.windows
        ]
    }


def source_view_to_json(view: MethodSourceView) -> dict[str, Any]:
    return {
        "sig": view.sig,
        "lines": list(view.lines),
        "origin": {
            "path": view.origin.path,
            "start_line": view.origin.start_line,
            "end_line": view.origin.end_line,
        },
    }


def issue_to_json(issue: ValidationIssue) -> dict[str, Any]:
    return {"severity": issue.severity, "code": issue.code, "message": issue.message}


def report_to_json(report: RegressionReport) -> dict[str, Any]:
    return {
        "counts": {
            "added": report.counts.added,
            "removed": report.counts.removed,
            "handler_changed": report.counts.handler_changed,
            "unchanged": report.counts.unchanged,
        },
        "focus_list": [
            {
                "window": entry.window,
                "path": list(entry.path),
                "status": entry.status.value,
                "handlers": list(entry.handlers),
            }
            for entry in report.focus_list
        ],
    }


def report_from_json(payload: Mapping[str, Any]) -> RegressionReport:
    counts = payload["counts"]
    return RegressionReport(
        counts=ReportCounts(
            added=counts["added"],
            removed=counts["removed"],
            handler_changed=counts["handler_changed"],
            unchanged=counts["unchanged"],
        ),
        focus_list=tuple(
            FocusEntry(
                window=entry["window"],
                path=tuple(entry["path"]),
                status=WidgetStatus(entry["status"]),
                handlers=tuple(entry["handlers"]),
            )
            for entry in payload["focus_list"]
        ),
    )


def report_to_text(
    report: RegressionReport, old_label: str | None = None, new_label: str | None = None
) -> str:
    lines = []
    if old_label is not None and new_label is not None:
        lines.append(f"comparison: {old_label} -> {new_label}")
        lines.append("")
    c = report.counts
    lines.append(
        f"widgets: {c.added} added, {c.removed} removed, "
        f"{c.handler_changed} handler_changed, {c.unchanged} unchanged"
    )
    lines.append("")
    if not report.focus_list:
        lines.append("retest focus: none")
    else:
        lines.append(f"retest focus ({len(report.focus_list)} widgets):")
        for entry in report.focus_list:
            location = ".".join(str(i) for i in entry.path) if entry.path else "(root)"
            lines.append(
                f"  [{entry.status.value}] window {entry.window!r} path {location}"
            )
            for handler in entry.handlers:
                lines.append(f"      {handler}")
    return "\n".join(lines) + "\n"


def exploration_to_json(bundle: ExplorationBundle) -> dict[str, Any]:
    return {
        "version_label": bundle.version_label,
        "gui": gui_model_to_json(bundle.gui),
        "slices": [
            {"handler": sig, "slice": slice_to_json(bundle.slices[sig])}
            for sig in sorted(bundle.slices)
        ],
        "sources": {
            sig: source_view_to_json(bundle.sources[sig])
            for sig in sorted(bundle.sources)
        },
        "warnings": [issue_to_json(i) for i in bundle.warnings],
    }


def comparison_to_json(bundle: ComparisonBundle) -> dict[str, Any]:
    return {
        "versions": {"old_label": bundle.old_label, "new_label": bundle.new_label},
        "merged_tree": merged_tree_to_json(bundle.merged_tree),
        "handler_diffs": [
            {
                "widget": widget,
                "handler": handler,
                "diff": diff_to_json(bundle.handler_diffs[(widget, handler)]),
            }
            for widget, handler in sorted(bundle.handler_diffs)
        ],
        "condensed": [
            {
                "widget": widget,
                "handler": handler,
                "graph": condensed_to_json(bundle.condensed[(widget, handler)]),
            }
            for widget, handler in sorted(bundle.condensed)
        ],
        "source_diffs": {
            sig: hunks_to_json(bundle.source_diffs[sig])
            for sig in sorted(bundle.source_diffs)
        },
        "report": report_to_json(bundle.report),
        "warnings": [issue_to_json(i) for i in bundle.warnings],
    }
