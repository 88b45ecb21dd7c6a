"""evotrack: GUI-to-source evolution tracking for two application versions."""

from .classify import CategorizedCallGraph, annotate_graph, categorize
from .condense import CondensedGraph, SuperNode, collapse_unchanged, expand
from .graph_diff import (
    DiffEdgeStatus,
    DiffNodeStatus,
    Side,
    SliceDiff,
    diff_slices,
    has_changes,
    propagate_to_widgets,
    unmatched_handler_diff,
)
from .gui_match import (
    MergedGuiTree,
    MergedWidget,
    MergedWindow,
    WidgetStatus,
    build_merged_tree,
    match_models,
    match_widgets,
    match_windows,
    widget_key,
)
from .model import (
    CallGraph,
    Category,
    ClassificationRules,
    GuiModel,
    MethodRecord,
    MethodSig,
    Project,
    SourceSpan,
    ValidationIssue,
    Widget,
    Window,
    canonical_sig,
)
from .slicer import HandlerSlice, slice_handler
from .textdiff import (
    DiffHunk,
    DiffOp,
    MethodSourceView,
    extract_method_source,
    line_diff,
    method_fingerprint,
)

__version__ = "0.1.0"

__all__ = [
    "CallGraph",
    "CategorizedCallGraph",
    "Category",
    "ClassificationRules",
    "CondensedGraph",
    "DiffEdgeStatus",
    "DiffHunk",
    "DiffNodeStatus",
    "DiffOp",
    "GuiModel",
    "HandlerSlice",
    "MergedGuiTree",
    "MergedWidget",
    "MergedWindow",
    "MethodRecord",
    "MethodSig",
    "MethodSourceView",
    "Project",
    "Side",
    "SliceDiff",
    "SourceSpan",
    "SuperNode",
    "ValidationIssue",
    "Widget",
    "WidgetStatus",
    "Window",
    "annotate_graph",
    "build_merged_tree",
    "canonical_sig",
    "categorize",
    "collapse_unchanged",
    "diff_slices",
    "expand",
    "extract_method_source",
    "has_changes",
    "line_diff",
    "match_models",
    "match_widgets",
    "match_windows",
    "method_fingerprint",
    "propagate_to_widgets",
    "slice_handler",
    "unmatched_handler_diff",
    "widget_key",
]
