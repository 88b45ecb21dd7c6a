"""Core domain types: method identities, call graphs, GUI models, projects.

All types are immutable after construction and safe to share between
threads. Artifact file loading and serialization live in
:mod:`evotrack.artifacts`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Iterator, Mapping

from .errors import DuplicateWidgetId, MalformedSignature, SchemaError, UnknownEndpoint

# Canonical form: package.Class#method(paramType,...):returnType
MethodSig = str

_WS = re.compile(r"\s")
_FINGERPRINT = re.compile(r"^[0-9a-f]{16}$")


class Category(str, Enum):
    """Origin of a method: the application itself, a library, or the platform."""

    APPLICATION = "application"
    LIBRARY = "library"
    FRAMEWORK = "framework"

    @property
    def label(self) -> str:
        """Abstraction-node key used in diff graphs and DOT output."""
        return self.value.capitalize()


def canonical_sig(raw: str) -> MethodSig:
    """Normalize a raw method signature into canonical form.

    Whitespace around the class, method, parameter, and return-type tokens
    is stripped. Raises :class:`MalformedSignature` when the required
    delimiters are missing or whitespace remains inside a token.
    Idempotent on already-canonical input.
    """
    if raw.count("#") != 1:
        raise MalformedSignature(f"expected exactly one '#' in {raw!r}")
    cls, rest = raw.split("#")
    cls = cls.strip()
    if rest.count("(") != 1 or rest.count(")") != 1:
        raise MalformedSignature(f"expected exactly one '(' and one ')' in {raw!r}")
    open_i, close_i = rest.find("("), rest.find(")")
    if close_i < open_i:
        raise MalformedSignature(f"unbalanced parentheses in {raw!r}")
    method = rest[:open_i].strip()
    params_text = rest[open_i + 1 : close_i]
    tail = rest[close_i + 1 :].strip()
    if not tail.startswith(":"):
        raise MalformedSignature(f"missing ':returnType' after ')' in {raw!r}")
    ret = tail[1:].strip()
    if not cls or not method or not ret:
        raise MalformedSignature(f"empty class, method, or return type in {raw!r}")
    if params_text.strip():
        params = [p.strip() for p in params_text.split(",")]
        if any(not p for p in params):
            raise MalformedSignature(f"empty parameter in {raw!r}")
    else:
        params = []
    text = f"{cls}#{method}({','.join(params)}):{ret}"
    if _WS.search(text):
        raise MalformedSignature(f"whitespace inside a token of {raw!r}")
    if text.count(":") != 1:
        raise MalformedSignature(f"expected exactly one ':' in {raw!r}")
    return text


@dataclass(frozen=True)
class SourceSpan:
    """Inclusive line range of a method body within a source file."""

    path: str
    start_line: int
    end_line: int

    def __post_init__(self) -> None:
        if self.start_line < 1:
            raise SchemaError(f"start_line must be >= 1, got {self.start_line}")
        if self.end_line < self.start_line:
            raise SchemaError(
                f"end_line {self.end_line} precedes start_line {self.start_line}"
            )


@dataclass(frozen=True)
class MethodRecord:
    """A call-graph vertex: identity, change fingerprint, source location."""

    sig: MethodSig
    fingerprint: str
    source: SourceSpan | None = None

    def __post_init__(self) -> None:
        if not _FINGERPRINT.match(self.fingerprint):
            raise SchemaError(
                f"fingerprint must be 16 lowercase hex digits, got {self.fingerprint!r}"
            )


@dataclass(frozen=True)
class CallGraph:
    """Static call graph: ordered method records plus a set of call edges.

    Edge endpoints must be declared in ``methods``; self-loops (recursion)
    are legal. Duplicate-edge detection happens at load time, before the
    edge list is collapsed into a set.
    """

    methods: tuple[MethodRecord, ...]
    edges: frozenset[tuple[MethodSig, MethodSig]]

    def __post_init__(self) -> None:
        seen: set[MethodSig] = set()
        for rec in self.methods:
            if rec.sig in seen:
                raise SchemaError(f"duplicate method declaration: {rec.sig}")
            seen.add(rec.sig)
        for caller, callee in self.edges:
            for endpoint in (caller, callee):
                if endpoint not in seen:
                    raise UnknownEndpoint(f"edge endpoint not declared: {endpoint}")

    @cached_property
    def record_of(self) -> dict[MethodSig, MethodRecord]:
        return {rec.sig: rec for rec in self.methods}

    @cached_property
    def fingerprints(self) -> dict[MethodSig, str]:
        return {rec.sig: rec.fingerprint for rec in self.methods}


@dataclass(frozen=True)
class Widget:
    """One node of a window's widget tree.

    ``children`` order is significant and survives serialization
    round-trips. ``screenshot`` is pass-through metadata.
    """

    id: str
    widget_class: str
    properties: Mapping[str, str]
    handlers: tuple[MethodSig, ...]
    children: tuple["Widget", ...] = ()
    screenshot: str | None = None

    def walk(self) -> Iterator["Widget"]:
        """Preorder traversal of this subtree, self first."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class Window:
    title: str
    window_class: str
    root: Widget


@dataclass(frozen=True)
class GuiModel:
    """Window-rooted widget trees; widget ids are unique model-wide."""

    windows: tuple[Window, ...]

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for widget in self.iter_widgets():
            if widget.id in seen:
                raise DuplicateWidgetId(f"widget id appears twice: {widget.id}")
            seen.add(widget.id)

    def iter_widgets(self) -> Iterator[Widget]:
        for window in self.windows:
            yield from window.root.walk()

    @cached_property
    def widget_by_id(self) -> dict[str, Widget]:
        return {w.id: w for w in self.iter_widgets()}


@dataclass(frozen=True)
class ClassificationRules:
    """Ordered prefix rules mapping method owners to categories.

    First matching prefix wins; built-in platform prefixes apply only when
    no user rule matches. ``match_properties`` optionally overrides the
    widget-matching key properties.
    """

    rules: tuple[tuple[str, Category], ...] = ()
    default_category: Category = Category.APPLICATION
    match_properties: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        for prefix, _ in self.rules:
            if not prefix:
                raise SchemaError("classification rule prefix must be non-empty")


@dataclass(frozen=True)
class Project:
    """One captured application version: labels plus artifact locations."""

    version_label: str
    gui_model_path: Path
    call_graph_path: Path
    source_root: Path | None = None
    rules_path: Path | None = None

    def __post_init__(self) -> None:
        if not self.version_label:
            raise SchemaError("version_label must be non-empty")


SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"


@dataclass(frozen=True)
class ValidationIssue:
    """One problem found while validating a project; issues are data, not errors."""

    severity: str
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}[{self.code}]: {self.message}"
