"""End-to-end pipelines: exploration and comparison of loaded projects.

Both pipelines are pure functions of the project artifact files; output
directories are staged in a sibling temp directory and renamed into
place, so a failed run never leaves a partial bundle behind.
"""

from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import artifacts
from .bundle import (
    ComparisonBundle,
    ExplorationBundle,
    build_report,
    comparison_to_json,
    exploration_to_json,
    report_to_text,
)
from .classify import CategorizedCallGraph, annotate_graph
from .dot import export_dot
from .errors import EvoTrackError, SchemaError
from .gui_match import (
    DEFAULT_KEY_PROPERTIES,
    MergedGuiTree,
    WidgetStatus,
    build_merged_tree,
    match_models,
)
from .graph_diff import (
    DiffNodeStatus,
    Side,
    SliceDiff,
    diff_slices,
    empty_diff,
    propagate_to_widgets,
    unmatched_handler_diff,
)
from .condense import collapse_unchanged
from .model import (
    CallGraph,
    Category,
    ClassificationRules,
    GuiModel,
    MethodSig,
    Project,
    SEVERITY_ERROR,
    SEVERITY_WARNING,
    ValidationIssue,
)
from .slicer import HandlerSlice, slice_handler
from .textdiff import extract_method_source, line_diff


@dataclass(frozen=True)
class LoadedProject:
    """A fully loaded and categorized project version."""

    project: Project
    gui: GuiModel
    graph: CallGraph
    categorized: CategorizedCallGraph
    rules: ClassificationRules
    warnings: tuple[ValidationIssue, ...]


def load_and_validate(project_path: str | Path) -> LoadedProject:
    """Load a project and all its artifacts, or fail.

    Validation errors abort: missing artifact files raise
    ``FileNotFoundError``, malformed content raises ``SchemaError``.
    Warnings are carried along into the bundles.
    """
    project = artifacts.load_project(Path(project_path))
    issues = artifacts.validate_project(project)
    errors = [i for i in issues if i.severity == SEVERITY_ERROR]
    if errors:
        message = "; ".join(str(i) for i in errors)
        if any(i.code == "missing-artifact" for i in errors):
            raise FileNotFoundError(message)
        raise SchemaError(message)
    gui = artifacts.load_gui_model(project.gui_model_path)
    graph = artifacts.load_call_graph(project.call_graph_path)
    rules = (
        artifacts.load_rules(project.rules_path)
        if project.rules_path is not None
        else ClassificationRules()
    )
    return LoadedProject(
        project=project,
        gui=gui,
        graph=graph,
        categorized=annotate_graph(graph, rules),
        rules=rules,
        warnings=tuple(i for i in issues if i.severity == SEVERITY_WARNING),
    )


def _sliceable(loaded: LoadedProject, handler: MethodSig) -> bool:
    return (
        handler in loaded.graph.record_of
        and loaded.categorized.category_of[handler] is Category.APPLICATION
    )


def explore_project(loaded: LoadedProject) -> ExplorationBundle:
    """Slice every application handler referenced by the GUI model.

    Handlers that are absent from the call graph or not application code
    are skipped with a warning; sources are attached for every sliced
    method whose recorded location is readable.
    """
    warnings = list(loaded.warnings)
    handlers = sorted({h for w in loaded.gui.iter_widgets() for h in w.handlers})
    slices: dict[MethodSig, HandlerSlice] = {}
    for handler in handlers:
        if handler not in loaded.graph.record_of:
            continue  # already warned as dangling by validation
        if loaded.categorized.category_of[handler] is not Category.APPLICATION:
            warnings.append(
                ValidationIssue(
                    SEVERITY_WARNING,
                    "non-application-handler",
                    f"handler not sliced: {handler}",
                )
            )
            continue
        slices[handler] = slice_handler(loaded.categorized, handler)

    sources = {}
    if loaded.project.source_root is not None:
        sliced_methods = sorted({sig for s in slices.values() for sig in s.app_nodes})
        for sig in sliced_methods:
            rec = loaded.graph.record_of[sig]
            if rec.source is None:
                continue
            try:
                sources[sig] = extract_method_source(loaded.project.source_root, rec)
            except (OSError, EvoTrackError) as exc:
                warnings.append(
                    ValidationIssue(
                        SEVERITY_WARNING, "source-unavailable", f"{sig}: {exc}"
                    )
                )
    return ExplorationBundle(
        version_label=loaded.project.version_label,
        gui=loaded.gui,
        slices=slices,
        sources=sources,
        warnings=tuple(warnings),
    )


def compare_projects(old: LoadedProject, new: LoadedProject) -> ComparisonBundle:
    """Full comparison pipeline: match, slice, diff, propagate, condense,
    and source-diff two project versions."""
    key_props = (
        new.rules.match_properties
        or old.rules.match_properties
        or DEFAULT_KEY_PROPERTIES
    )
    pairs, removed, added = match_models(old.gui, new.gui, key_props)
    tree = build_merged_tree(pairs, removed, added, old.gui, new.gui)

    slice_cache: dict[tuple[Side, MethodSig], HandlerSlice] = {}

    def slice_of(side: Side, loaded: LoadedProject, handler: MethodSig) -> HandlerSlice:
        key = (side, handler)
        if key not in slice_cache:
            slice_cache[key] = slice_handler(loaded.categorized, handler)
        return slice_cache[key]

    diffs: dict[tuple[str, MethodSig], SliceDiff] = {}
    for widget in tree.iter_widgets():
        for handler in widget.handlers:
            key = (widget.merged_id, handler)
            old_ok = _sliceable(old, handler)
            new_ok = _sliceable(new, handler)
            if widget.status is WidgetStatus.ADDED:
                if new_ok:
                    diffs[key] = unmatched_handler_diff(
                        slice_of(Side.NEW, new, handler), Side.NEW
                    )
            elif widget.status is WidgetStatus.REMOVED:
                if old_ok:
                    diffs[key] = unmatched_handler_diff(
                        slice_of(Side.OLD, old, handler), Side.OLD
                    )
            else:
                if old_ok and new_ok:
                    diffs[key] = diff_slices(
                        slice_of(Side.OLD, old, handler),
                        slice_of(Side.NEW, new, handler),
                        old.graph.fingerprints,
                        new.graph.fingerprints,
                    )
                elif old_ok:
                    diffs[key] = unmatched_handler_diff(
                        slice_of(Side.OLD, old, handler), Side.OLD
                    )
                elif new_ok:
                    diffs[key] = unmatched_handler_diff(
                        slice_of(Side.NEW, new, handler), Side.NEW
                    )
                else:
                    diffs[key] = empty_diff(handler)

    tree = propagate_to_widgets(tree, diffs)

    # Placeholder diffs for unsliceable handlers exist only to satisfy
    # propagation coverage; the serialized bundle omits them.
    bundle_diffs = {k: d for k, d in diffs.items() if d.nodes or d.edges}
    condensed = {k: collapse_unchanged(d) for k, d in bundle_diffs.items()}

    warnings = list(old.warnings) + list(new.warnings)
    source_diffs = {}
    changed_sigs = sorted(
        {
            key
            for d in bundle_diffs.values()
            for key, status in d.nodes.items()
            if status is DiffNodeStatus.CHANGED
        }
    )
    for sig in changed_sigs:
        old_rec = old.graph.record_of.get(sig)
        new_rec = new.graph.record_of.get(sig)
        if (
            old_rec is None
            or new_rec is None
            or old_rec.source is None
            or new_rec.source is None
            or old.project.source_root is None
            or new.project.source_root is None
        ):
            continue
        try:
            before = extract_method_source(old.project.source_root, old_rec)
            after = extract_method_source(new.project.source_root, new_rec)
        except (OSError, EvoTrackError) as exc:
            warnings.append(
                ValidationIssue(SEVERITY_WARNING, "source-unavailable", f"{sig}: {exc}")
            )
            continue
        source_diffs[sig] = tuple(line_diff(before.lines, after.lines))

    report = build_report(tree, diffs)
    return ComparisonBundle(
        old_label=old.project.version_label,
        new_label=new.project.version_label,
        merged_tree=tree,
        handler_diffs=bundle_diffs,
        condensed=condensed,
        source_diffs=source_diffs,
        report=report,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# output writing

def _digest_name(prefix: str, *parts: str) -> str:
    digest = hashlib.sha256("\x00".join(parts).encode("utf-8")).hexdigest()[:12]
    return f"{prefix}-{digest}.dot"


def _json_bytes(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _write_atomic(out_dir: str | Path, files: dict[str, str]) -> Path:
    """Write all files into a staging directory, then swap it into place."""
    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(
        tempfile.mkdtemp(prefix=f".{out_dir.name}.stage-", dir=out_dir.parent)
    )
    try:
        for name, content in files.items():
            (staging / name).write_text(content, encoding="utf-8", newline="\n")
        if out_dir.exists():
            shutil.rmtree(out_dir)
        os.rename(staging, out_dir)
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise
    return out_dir


def exploration_dot_name(handler: MethodSig) -> str:
    return _digest_name("slice", handler)


def comparison_dot_name(widget: str, handler: MethodSig) -> str:
    return _digest_name("diff", widget, handler)


def write_exploration(bundle: ExplorationBundle, out_dir: str | Path) -> Path:
    files = {"exploration.json": _json_bytes(exploration_to_json(bundle))}
    for handler in sorted(bundle.slices):
        files[exploration_dot_name(handler)] = export_dot(
            bundle.slices[handler], comment=f"handler: {handler}"
        )
    return _write_atomic(out_dir, files)


def write_comparison(bundle: ComparisonBundle, out_dir: str | Path) -> Path:
    files = {
        "comparison.json": _json_bytes(comparison_to_json(bundle)),
        "report.txt": report_to_text(bundle.report, bundle.old_label, bundle.new_label),
    }
    for widget, handler in sorted(bundle.handler_diffs):
        files[comparison_dot_name(widget, handler)] = export_dot(
            bundle.handler_diffs[(widget, handler)],
            comment=f"widget: {widget} handler: {handler}",
        )
    return _write_atomic(out_dir, files)
