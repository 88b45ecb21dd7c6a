"""Artifact file I/O: project manifests, GUI models, call graphs, rules.

All artifacts are JSON. Loaders verify the schema and every type
invariant; ``dump_*`` functions emit the canonical serialized form, so
``dump(load(path))`` is the normalization pass and is byte-stable under
reload.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import DuplicateEdge, EvoTrackError, SchemaError
from .model import (
    CallGraph,
    Category,
    ClassificationRules,
    GuiModel,
    MethodRecord,
    Project,
    SourceSpan,
    ValidationIssue,
    SEVERITY_ERROR,
    SEVERITY_WARNING,
    Widget,
    Window,
    canonical_sig,
)


def _read_json(path: Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON: {exc}") from exc


def _require(obj: dict, key: str, kind: type, where: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise SchemaError(f"{where}: missing required field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# project manifest

def load_project(path: str | Path) -> Project:
    """Parse a project manifest; relative artifact paths are resolved
    against the manifest's directory.

    Artifact files are not required to exist yet: existence is reported by
    :func:`validate_project`, not here.
    """
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    label = _require(data, "version_label", str, where)
    base = path.resolve().parent

    def resolve(key: str, required: bool) -> Path | None:
        if key not in data:
            if required:
                raise SchemaError(f"{where}: missing required field {key!r}")
            return None
        value = data[key]
        if not isinstance(value, str) or not value:
            raise SchemaError(f"{where}: field {key!r} must be a non-empty string")
        p = Path(value)
        return p if p.is_absolute() else base / p

    return Project(
        version_label=label,
        gui_model_path=resolve("gui_model", required=True),
        call_graph_path=resolve("call_graph", required=True),
        source_root=resolve("source_root", required=False),
        rules_path=resolve("rules", required=False),
    )


def dump_project(project: Project) -> str:
    payload: dict[str, Any] = {
        "version_label": project.version_label,
        "gui_model": str(project.gui_model_path),
        "call_graph": str(project.call_graph_path),
    }
    if project.source_root is not None:
        payload["source_root"] = str(project.source_root)
    if project.rules_path is not None:
        payload["rules"] = str(project.rules_path)
    return _json_text(payload)


# ---------------------------------------------------------------------------
# GUI model

def _widget_from_json(data: Any, where: str) -> Widget:
    wid = _require(data, "id", str, where)
    cls = _require(data, "class", str, where)
    props = _require(data, "properties", dict, where)
    for key, value in props.items():
        if not isinstance(key, str) or not isinstance(value, str):
            raise SchemaError(f"{where}: widget {wid!r} properties must map str to str")
    handlers = _require(data, "handlers", list, where)
    children = _require(data, "children", list, where)
    screenshot = data.get("screenshot")
    if screenshot is not None and not isinstance(screenshot, str):
        raise SchemaError(f"{where}: widget {wid!r} screenshot must be a string")
    return Widget(
        id=wid,
        widget_class=cls,
        properties=dict(props),
        handlers=tuple(canonical_sig(_as_str(h, where, "handler")) for h in handlers),
        children=tuple(_widget_from_json(c, where) for c in children),
        screenshot=screenshot,
    )


def _as_str(value: Any, where: str, what: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: {what} must be a string, got {type(value).__name__}")
    return value


def load_gui_model(path: str | Path) -> GuiModel:
    """Load a GUI model file; handler strings are canonicalized."""
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    windows = _require(data, "windows", list, where)
    parsed = []
    for win in windows:
        title = _require(win, "title", str, where)
        cls = _require(win, "class", str, where)
        root = _widget_from_json(_require(win, "root", dict, where), where)
        parsed.append(Window(title=title, window_class=cls, root=root))
    return GuiModel(windows=tuple(parsed))


def _widget_to_json(widget: Widget) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "id": widget.id,
        "class": widget.widget_class,
        "properties": {k: widget.properties[k] for k in sorted(widget.properties)},
        "handlers": list(widget.handlers),
    }
    if widget.screenshot is not None:
        payload["screenshot"] = widget.screenshot
    payload["children"] = [_widget_to_json(c) for c in widget.children]
    return payload


def gui_model_to_json(model: GuiModel) -> dict[str, Any]:
    return {
        "windows": [
            {
                "title": w.title,
                "class": w.window_class,
                "root": _widget_to_json(w.root),
            }
            for w in model.windows
        ]
    }


def dump_gui_model(model: GuiModel) -> str:
    return _json_text(gui_model_to_json(model))


# ---------------------------------------------------------------------------
# call graph

def load_call_graph(path: str | Path) -> CallGraph:
    """Load a call-graph file; rejects duplicate edges and undeclared endpoints."""
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    methods = []
    for entry in _require(data, "methods", list, where):
        sig = canonical_sig(_require(entry, "sig", str, where))
        fingerprint = _require(entry, "fingerprint", str, where)
        source = None
        if entry.get("source") is not None:
            src = entry["source"]
            source = SourceSpan(
                path=_require(src, "path", str, where),
                start_line=_require(src, "start_line", int, where),
                end_line=_require(src, "end_line", int, where),
            )
        methods.append(MethodRecord(sig=sig, fingerprint=fingerprint, source=source))

    edges: list[tuple[str, str]] = []
    seen: set[tuple[str, str]] = set()
    for pair in _require(data, "edges", list, where):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"{where}: each edge must be a [caller, callee] pair")
        edge = (
            canonical_sig(_as_str(pair[0], where, "edge caller")),
            canonical_sig(_as_str(pair[1], where, "edge callee")),
        )
        if edge in seen:
            raise DuplicateEdge(f"{where}: duplicate edge {edge[0]} -> {edge[1]}")
        seen.add(edge)
        edges.append(edge)
    return CallGraph(methods=tuple(methods), edges=frozenset(edges))


def dump_call_graph(graph: CallGraph) -> str:
    methods = []
    for rec in graph.methods:
        entry: dict[str, Any] = {"sig": rec.sig, "fingerprint": rec.fingerprint}
        if rec.source is not None:
            entry["source"] = {
                "path": rec.source.path,
                "start_line": rec.source.start_line,
                "end_line": rec.source.end_line,
            }
        methods.append(entry)
    return _json_text(
        {"methods": methods, "edges": [list(e) for e in sorted(graph.edges)]}
    )


# ---------------------------------------------------------------------------
# classification rules

def load_rules(path: str | Path) -> ClassificationRules:
    path = Path(path)
    data = _read_json(path)
    where = str(path)
    rules = []
    for entry in _require(data, "rules", list, where):
        prefix = _require(entry, "prefix", str, where)
        rules.append((prefix, _parse_category(entry.get("category"), where)))
    default = _parse_category(_require(data, "default", str, where), where)
    match_properties = None
    if data.get("match_properties") is not None:
        props = data["match_properties"]
        if not isinstance(props, list):
            raise SchemaError(f"{where}: match_properties must be a list of strings")
        match_properties = tuple(_as_str(p, where, "match property") for p in props)
    return ClassificationRules(
        rules=tuple(rules), default_category=default, match_properties=match_properties
    )


def _parse_category(value: Any, where: str) -> Category:
    try:
        return Category(value)
    except ValueError:
        raise SchemaError(f"{where}: unknown category {value!r}") from None


def dump_rules(rules: ClassificationRules) -> str:
    payload: dict[str, Any] = {
        "rules": [{"prefix": p, "category": c.value} for p, c in rules.rules],
        "default": rules.default_category.value,
    }
    if rules.match_properties is not None:
        payload["match_properties"] = list(rules.match_properties)
    return _json_text(payload)


# ---------------------------------------------------------------------------
# project validation

def validate_project(project: Project) -> list[ValidationIssue]:
    """Collect every problem with a project's artifacts as data.

    Missing files and schema violations are errors. Handler signatures
    absent from the call graph are warnings: platform-attached handlers
    legitimately live outside application code. Widgets sharing a match
    key within one window are warned about as matching ambiguity.
    """
    from .gui_match import DEFAULT_KEY_PROPERTIES, widget_key

    issues: list[ValidationIssue] = []
    rules = ClassificationRules()

    def load_artifact(kind: str, path: Path | None, loader):
        if path is None:
            return None
        if not path.is_file():
            issues.append(
                ValidationIssue(SEVERITY_ERROR, "missing-artifact", f"{kind}: {path}")
            )
            return None
        try:
            return loader(path)
        except EvoTrackError as exc:
            issues.append(
                ValidationIssue(SEVERITY_ERROR, "schema-error", f"{kind}: {exc}")
            )
        except OSError as exc:
            issues.append(
                ValidationIssue(SEVERITY_ERROR, "missing-artifact", f"{kind}: {exc}")
            )
        return None

    gui = load_artifact("gui model", project.gui_model_path, load_gui_model)
    graph = load_artifact("call graph", project.call_graph_path, load_call_graph)
    if project.rules_path is not None:
        rules = load_artifact("rules", project.rules_path, load_rules) or rules
    if project.source_root is not None and not project.source_root.is_dir():
        issues.append(
            ValidationIssue(
                SEVERITY_WARNING,
                "missing-artifact",
                f"source root: {project.source_root}",
            )
        )

    if gui is not None and graph is not None:
        declared = graph.record_of
        dangling = sorted(
            {h for w in gui.iter_widgets() for h in w.handlers if h not in declared}
        )
        for sig in dangling:
            issues.append(
                ValidationIssue(
                    SEVERITY_WARNING,
                    "dangling-handler",
                    f"handler not in call graph: {sig}",
                )
            )

    if gui is not None:
        key_props = rules.match_properties or DEFAULT_KEY_PROPERTIES
        for window in gui.windows:
            by_key: dict[str, list[str]] = {}
            for widget in window.root.walk():
                by_key.setdefault(widget_key(widget, key_props), []).append(widget.id)
            for ids in by_key.values():
                if len(ids) > 1:
                    issues.append(
                        ValidationIssue(
                            SEVERITY_WARNING,
                            "ambiguous-widget-key",
                            f"window {window.title!r}: widgets share a match key: "
                            + ", ".join(ids),
                        )
                    )
    return issues
