"""Handler slices: the call-graph fragment behind one GUI event.

A slice contains the application methods transitively reachable from an
event handler. Calls into library or framework code are abstracted into
one edge per (caller, category); traversal never continues through
non-application callees, so callbacks out of platform code are not
followed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .classify import CategorizedCallGraph
from .errors import HandlerNotApplication, MissingHandler
from .model import Category, MethodSig


@dataclass(frozen=True)
class HandlerSlice:
    """Application subgraph reachable from one handler, plus abstraction edges."""

    root: MethodSig
    app_nodes: frozenset[MethodSig]
    app_edges: frozenset[tuple[MethodSig, MethodSig]]
    abstraction_edges: frozenset[tuple[MethodSig, Category]]


def slice_handler(cg: CategorizedCallGraph, handler: MethodSig) -> HandlerSlice:
    """Extract the slice rooted at ``handler``.

    BFS from the root, callees visited in lexicographic order; only edges
    whose callee is application code are traversed. Each traversed method
    calling library or framework code contributes one abstraction edge per
    callee category.
    """
    if handler not in cg.graph.record_of:
        raise MissingHandler(f"handler not declared in call graph: {handler}")
    if cg.category_of[handler] is not Category.APPLICATION:
        raise HandlerNotApplication(
            f"handler categorized {cg.category_of[handler].value}: {handler}"
        )

    callees: dict[MethodSig, list[MethodSig]] = {}
    for caller, callee in cg.graph.edges:
        callees.setdefault(caller, []).append(callee)
    for targets in callees.values():
        targets.sort()

    app_nodes: set[MethodSig] = {handler}
    app_edges: set[tuple[MethodSig, MethodSig]] = set()
    abstraction_edges: set[tuple[MethodSig, Category]] = set()
    queue: deque[MethodSig] = deque([handler])
    while queue:
        current = queue.popleft()
        for callee in callees.get(current, ()):
            category = cg.category_of[callee]
            if category is Category.APPLICATION:
                app_edges.add((current, callee))
                if callee not in app_nodes:
                    app_nodes.add(callee)
                    queue.append(callee)
            else:
                abstraction_edges.add((current, category))

    return HandlerSlice(
        root=handler,
        app_nodes=frozenset(app_nodes),
        app_edges=frozenset(app_edges),
        abstraction_edges=frozenset(abstraction_edges),
    )
