"""Deterministic DOT rendering of slices, diffs, and condensed graphs.

Node ids are signature digests; the human-readable signature goes into
the label attribute. Status colors: removed=red, added=blue,
changed=green, unchanged=gray. Nodes and edges are emitted in
lexicographic key order so identical graphs always serialize identically.
"""

from __future__ import annotations

import hashlib

from .condense import ABSTRACTION_LABELS, CondensedGraph
from .graph_diff import DiffEdgeStatus, DiffNodeStatus, SliceDiff
from .slicer import HandlerSlice

NODE_COLORS = {
    DiffNodeStatus.REMOVED: "red",
    DiffNodeStatus.ADDED: "blue",
    DiffNodeStatus.CHANGED: "green",
    DiffNodeStatus.UNCHANGED: "gray",
}
EDGE_COLORS = {
    DiffEdgeStatus.REMOVED: "red",
    DiffEdgeStatus.ADDED: "blue",
    DiffEdgeStatus.UNCHANGED: "gray",
}


def _node_id(key: str) -> str:
    return "n" + hashlib.sha256(key.encode("utf-8")).hexdigest()[:12]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_line(key: str, attrs: list[tuple[str, str]]) -> str:
    rendered = ", ".join(f"{name}={_quote(value)}" for name, value in attrs)
    return f"  {_quote(_node_id(key))} [{rendered}];"


def export_dot(graph: HandlerSlice | SliceDiff | CondensedGraph, *, comment: str | None = None) -> str:
    """Render a graph as a DOT digraph. Output is byte-stable per input."""
    if isinstance(graph, HandlerSlice):
        body = _slice_body(graph)
    elif isinstance(graph, SliceDiff):
        body = _diff_body(graph)
    elif isinstance(graph, CondensedGraph):
        body = _condensed_body(graph)
    else:
        raise TypeError(f"cannot export {type(graph).__name__} as DOT")
    lines = []
    if comment:
        lines.append(f"// {comment}")
    lines.append("digraph evotrack {")
    lines.extend(body)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _slice_body(s: HandlerSlice) -> list[str]:
    lines = []
    labels = sorted({category.label for _, category in s.abstraction_edges})
    for key in sorted(s.app_nodes):
        lines.append(_node_line(key, [("label", key)]))
    for label in labels:
        lines.append(_node_line(label, [("label", label), ("shape", "box")]))
    edges = list(s.app_edges) + [
        (caller, category.label) for caller, category in s.abstraction_edges
    ]
    for src, dst in sorted(edges):
        lines.append(f"  {_quote(_node_id(src))} -> {_quote(_node_id(dst))};")
    return lines


def _diff_body(d: SliceDiff) -> list[str]:
    lines = []
    for key in sorted(d.nodes):
        attrs = [("label", key)]
        if key in ABSTRACTION_LABELS:
            attrs.append(("shape", "box"))
        attrs.append(("color", NODE_COLORS[d.nodes[key]]))
        lines.append(_node_line(key, attrs))
    for src, dst in sorted(d.edges):
        color = EDGE_COLORS[d.edges[(src, dst)]]
        lines.append(
            f"  {_quote(_node_id(src))} -> {_quote(_node_id(dst))} "
            f"[color={_quote(color)}];"
        )
    return lines


def _condensed_body(c: CondensedGraph) -> list[str]:
    lines = []
    super_ids = {sn.id for sn in c.super_nodes}
    keys = sorted(c.visible_nodes) + sorted(super_ids)
    labels = {sn.id: sn.label for sn in c.super_nodes}
    for key in sorted(keys):
        if key in super_ids:
            lines.append(_node_line(key, [("label", labels[key]), ("shape", "box3d")]))
        else:
            attrs = [("label", key)]
            if key in ABSTRACTION_LABELS:
                attrs.append(("shape", "box"))
            attrs.append(("color", NODE_COLORS[c.visible_nodes[key]]))
            lines.append(_node_line(key, attrs))
    for (src, dst), statuses in sorted(c.edges.items()):
        for status in sorted(statuses, key=lambda s: s.value):
            lines.append(
                f"  {_quote(_node_id(src))} -> {_quote(_node_id(dst))} "
                f"[color={_quote(EDGE_COLORS[status])}];"
            )
    return lines
