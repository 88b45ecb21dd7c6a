"""Union diffs of handler slices and status propagation to widgets.

The diff graph is the union of both versions' slices: every node and
edge carries a membership status, and methods present in both versions
are marked changed when their fingerprints differ. Abstraction edges are
ordinary edges whose target key is the category label ("Framework" or
"Library").
"""

from __future__ import annotations

from dataclasses import replace
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import MissingDiff, RootMismatch
from .gui_match import MergedGuiTree, MergedWidget, MergedWindow, WidgetStatus
from .model import MethodSig
from .slicer import HandlerSlice

# A node key is either a method signature or an abstraction label.
NodeKey = str
EdgeKey = tuple[NodeKey, NodeKey]


class DiffNodeStatus(str, Enum):
    ADDED = "added"
    REMOVED = "removed"
    CHANGED = "changed"
    UNCHANGED = "unchanged"


class DiffEdgeStatus(str, Enum):
    ADDED = "added"
    REMOVED = "removed"
    UNCHANGED = "unchanged"


class Side(Enum):
    OLD = "old"
    NEW = "new"


@dataclass(frozen=True)
class SliceDiff:
    """Union of two versions' slices with per-node and per-edge statuses."""

    root: MethodSig
    nodes: Mapping[NodeKey, DiffNodeStatus]
    edges: Mapping[EdgeKey, DiffEdgeStatus]


def _node_keys(s: HandlerSlice) -> set[NodeKey]:
    keys: set[NodeKey] = set(s.app_nodes)
    keys.update(category.label for _, category in s.abstraction_edges)
    return keys


def _edge_keys(s: HandlerSlice) -> set[EdgeKey]:
    keys: set[EdgeKey] = set(s.app_edges)
    keys.update((caller, category.label) for caller, category in s.abstraction_edges)
    return keys


def diff_slices(
    old: HandlerSlice,
    new: HandlerSlice,
    old_fp: Mapping[MethodSig, str],
    new_fp: Mapping[MethodSig, str],
) -> SliceDiff:
    """Union diff of two slices of the same handler.

    Node and edge statuses follow membership; a method present in both
    slices is changed exactly when its fingerprints differ. Abstraction
    labels never count as changed.
    """
    if old.root != new.root:
        raise RootMismatch(f"slice roots differ: {old.root} vs {new.root}")
    old_nodes, new_nodes = _node_keys(old), _node_keys(new)
    nodes: dict[NodeKey, DiffNodeStatus] = {}
    for key in old_nodes | new_nodes:
        if key not in new_nodes:
            nodes[key] = DiffNodeStatus.REMOVED
        elif key not in old_nodes:
            nodes[key] = DiffNodeStatus.ADDED
        elif key in old.app_nodes and old_fp[key] != new_fp[key]:
            nodes[key] = DiffNodeStatus.CHANGED
        else:
            nodes[key] = DiffNodeStatus.UNCHANGED

    old_edges, new_edges = _edge_keys(old), _edge_keys(new)
    edges: dict[EdgeKey, DiffEdgeStatus] = {}
    for key in old_edges | new_edges:
        if key not in new_edges:
            edges[key] = DiffEdgeStatus.REMOVED
        elif key not in old_edges:
            edges[key] = DiffEdgeStatus.ADDED
        else:
            edges[key] = DiffEdgeStatus.UNCHANGED
    return SliceDiff(root=old.root, nodes=nodes, edges=edges)


def unmatched_handler_diff(s: HandlerSlice, side: Side) -> SliceDiff:
    """Exploration-style diff for a handler present on only one side:
    everything removed (old side) or added (new side)."""
    node_status = DiffNodeStatus.REMOVED if side is Side.OLD else DiffNodeStatus.ADDED
    edge_status = DiffEdgeStatus.REMOVED if side is Side.OLD else DiffEdgeStatus.ADDED
    return SliceDiff(
        root=s.root,
        nodes={key: node_status for key in _node_keys(s)},
        edges={key: edge_status for key in _edge_keys(s)},
    )


def empty_diff(root: MethodSig) -> SliceDiff:
    """Placeholder diff for handlers that are not sliceable on either side."""
    return SliceDiff(root=root, nodes={}, edges={})


def has_changes(d: SliceDiff) -> bool:
    return any(s is not DiffNodeStatus.UNCHANGED for s in d.nodes.values()) or any(
        s is not DiffEdgeStatus.UNCHANGED for s in d.edges.values()
    )


def propagate_to_widgets(
    tree: MergedGuiTree,
    per_handler_diffs: Mapping[tuple[str, MethodSig], SliceDiff],
) -> MergedGuiTree:
    """Mark matched widgets whose handler diffs contain any change.

    A matched widget becomes handler-changed when at least one of its
    handlers' diffs has changes; otherwise it is unchanged. Added and
    removed widgets keep their status. Idempotent.
    """

    def visit(widget: MergedWidget) -> MergedWidget:
        children = tuple(visit(c) for c in widget.children)
        status = widget.status
        if status in (WidgetStatus.UNCHANGED, WidgetStatus.HANDLER_CHANGED):
            changed = False
            for handler in widget.handlers:
                key = (widget.merged_id, handler)
                if key not in per_handler_diffs:
                    raise MissingDiff(
                        f"no diff for handler {handler} of widget {widget.merged_id}"
                    )
                if has_changes(per_handler_diffs[key]):
                    changed = True
            status = WidgetStatus.HANDLER_CHANGED if changed else WidgetStatus.UNCHANGED
        return replace(widget, status=status, children=children)

    windows = tuple(
        MergedWindow(
            title=w.title,
            window_class=w.window_class,
            status=w.status,
            root=visit(w.root),
        )
        for w in tree.windows
    )
    return MergedGuiTree(windows=windows)
