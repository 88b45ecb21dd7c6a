"""Collapsing unchanged diff nodes into super-nodes.

Maximal weakly connected groups of unchanged methods become one labeled
super-node each, so changed methods stay in plain view. The root handler
and the abstraction nodes are never collapsed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .errors import ForeignCondensation
from .graph_diff import DiffEdgeStatus, DiffNodeStatus, NodeKey, SliceDiff
from .model import MethodSig

ABSTRACTION_LABELS = ("Framework", "Library")


@dataclass(frozen=True)
class SuperNode:
    id: str
    members: frozenset[MethodSig]
    label: str


@dataclass(frozen=True)
class CondensedGraph:
    """Quotient of a slice diff over its unchanged-node groups.

    ``edges`` values carry the set of statuses of the underlying source
    edges between the two groups (visible nodes count as singleton
    groups).
    """

    visible_nodes: Mapping[NodeKey, DiffNodeStatus]
    super_nodes: tuple[SuperNode, ...]
    edges: Mapping[tuple[str, str], frozenset[DiffEdgeStatus]]


def _collapsible(d: SliceDiff) -> set[NodeKey]:
    return {
        key
        for key, status in d.nodes.items()
        if status is DiffNodeStatus.UNCHANGED
        and key != d.root
        and key not in ABSTRACTION_LABELS
    }


def collapse_unchanged(d: SliceDiff) -> CondensedGraph:
    """Collapse unchanged non-root, non-abstraction nodes into super-nodes.

    Groups are the weakly connected components of the subgraph induced by
    the collapsible nodes, numbered U1, U2, ... by lexicographically
    smallest member.
    """
    collapsible = _collapsible(d)
    neighbors: dict[NodeKey, set[NodeKey]] = {key: set() for key in collapsible}
    for a, b in d.edges:
        if a in collapsible and b in collapsible:
            neighbors[a].add(b)
            neighbors[b].add(a)

    components: list[set[NodeKey]] = []
    seen: set[NodeKey] = set()
    for key in sorted(collapsible):
        if key in seen:
            continue
        component = {key}
        queue = deque([key])
        seen.add(key)
        while queue:
            for other in neighbors[queue.popleft()]:
                if other not in seen:
                    seen.add(other)
                    component.add(other)
                    queue.append(other)
        components.append(component)
    components.sort(key=min)

    group_of: dict[NodeKey, str] = {}
    super_nodes = []
    for i, component in enumerate(components, start=1):
        sid = f"U{i}"
        super_nodes.append(
            SuperNode(
                id=sid,
                members=frozenset(component),
                label=f"{len(component)} unchanged methods",
            )
        )
        for key in component:
            group_of[key] = sid

    visible = {
        key: status for key, status in d.nodes.items() if key not in collapsible
    }
    edges: dict[tuple[str, str], set[DiffEdgeStatus]] = {}
    for (a, b), status in d.edges.items():
        quotient = (group_of.get(a, a), group_of.get(b, b))
        edges.setdefault(quotient, set()).add(status)
    return CondensedGraph(
        visible_nodes=visible,
        super_nodes=tuple(super_nodes),
        edges={key: frozenset(statuses) for key, statuses in edges.items()},
    )


def expand(c: CondensedGraph, source: SliceDiff) -> SliceDiff:
    """Inverse of :func:`collapse_unchanged` for the UI's expand control.

    Verifies that ``c`` is the condensation of ``source`` and returns the
    source diff.
    """
    if collapse_unchanged(source) != c:
        raise ForeignCondensation("condensed graph was not derived from this diff")
    return source
