"""Widget matching across versions and the merged, status-annotated GUI tree.

Widgets are matched by a key digest of their extracted properties, never
by position, so reordered siblings still pair up. Duplicate keys are
resolved preorder-greedily; geometry properties are deliberately not part
of the default key because moving or resizing a widget should not break
its identity.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterator, Mapping, Sequence

from .errors import InconsistentMatch
from .model import GuiModel, MethodSig, Widget, Window

MatchKey = str

DEFAULT_KEY_PROPERTIES = ("text", "name", "actionCommand")

WINDOW_MATCHED = "matched"
WINDOW_ADDED = "added"
WINDOW_REMOVED = "removed"


class WidgetStatus(str, Enum):
    ADDED = "added"
    REMOVED = "removed"
    HANDLER_CHANGED = "handler_changed"
    UNCHANGED = "unchanged"


def widget_key(widget: Widget, key_props: Sequence[str] = DEFAULT_KEY_PROPERTIES) -> MatchKey:
    """Deterministic digest of widget class, key property values, and
    sorted handler signatures. Absent properties hash as a fixed marker."""
    digest = hashlib.sha256()

    def feed(tag: bytes, text: str) -> None:
        data = text.encode("utf-8")
        digest.update(tag + len(data).to_bytes(4, "big") + data)

    feed(b"C", widget.widget_class)
    for prop in key_props:
        if prop in widget.properties:
            feed(b"P", widget.properties[prop])
        else:
            digest.update(b"A")
    for sig in sorted(widget.handlers):
        feed(b"H", sig)
    return digest.hexdigest()


def match_windows(
    old: GuiModel, new: GuiModel
) -> tuple[list[tuple[Window, Window]], list[Window], list[Window]]:
    """Pair windows with identical (class, title); leftovers are removed or
    added. Duplicate (class, title) ties break by model order."""
    available: dict[tuple[str, str], list[Window]] = {}
    for window in new.windows:
        available.setdefault((window.window_class, window.title), []).append(window)

    pairs: list[tuple[Window, Window]] = []
    removed: list[Window] = []
    taken: set[int] = set()
    for window in old.windows:
        queue = available.get((window.window_class, window.title), [])
        if queue:
            counterpart = queue.pop(0)
            pairs.append((window, counterpart))
            taken.add(id(counterpart))
        else:
            removed.append(window)
    added = [w for w in new.windows if id(w) not in taken]
    return pairs, removed, added


def match_widgets(
    old_root: Widget,
    new_root: Widget,
    key_props: Sequence[str] = DEFAULT_KEY_PROPERTIES,
) -> tuple[list[tuple[Widget, Widget]], list[Widget], list[Widget]]:
    """Match the widgets of two rooted trees by key.

    Window roots always pair with each other. Within one key group, old
    and new widgets pair in preorder order until a side is exhausted;
    leftovers are removed (old) or added (new).
    """
    pairs: list[tuple[Widget, Widget]] = [(old_root, new_root)]
    old_groups: dict[MatchKey, list[Widget]] = {}
    for widget in old_root.walk():
        if widget is not old_root:
            old_groups.setdefault(widget_key(widget, key_props), []).append(widget)
    new_groups: dict[MatchKey, list[Widget]] = {}
    for widget in new_root.walk():
        if widget is not new_root:
            new_groups.setdefault(widget_key(widget, key_props), []).append(widget)

    removed: list[Widget] = []
    added: list[Widget] = []
    keyed_pairs: dict[str, tuple[Widget, Widget]] = {}
    for key, olds in old_groups.items():
        news = new_groups.get(key, [])
        for ow, nw in zip(olds, news):
            keyed_pairs[ow.id] = (ow, nw)
        removed.extend(olds[len(news) :])
        added.extend(news[len(olds) :])
    for key, news in new_groups.items():
        if key not in old_groups:
            added.extend(news)

    # Report pairs in old preorder (root first), leftovers in preorder.
    for widget in old_root.walk():
        if widget.id in keyed_pairs:
            pairs.append(keyed_pairs[widget.id])
    removed = _in_preorder(old_root, removed)
    added = _in_preorder(new_root, added)
    return pairs, removed, added


def _in_preorder(root: Widget, subset: Sequence[Widget]) -> list[Widget]:
    wanted = {id(w) for w in subset}
    return [w for w in root.walk() if id(w) in wanted]


def match_models(
    old: GuiModel,
    new: GuiModel,
    key_props: Sequence[str] = DEFAULT_KEY_PROPERTIES,
) -> tuple[list[tuple[Widget, Widget]], list[Widget], list[Widget]]:
    """Model-wide widget matching: per matched window pair, plus the whole
    subtrees of unmatched windows as removed or added."""
    window_pairs, removed_windows, added_windows = match_windows(old, new)
    pairs: list[tuple[Widget, Widget]] = []
    removed: list[Widget] = []
    added: list[Widget] = []
    for old_window, new_window in window_pairs:
        p, r, a = match_widgets(old_window.root, new_window.root, key_props)
        pairs.extend(p)
        removed.extend(r)
        added.extend(a)
    for window in removed_windows:
        removed.extend(window.root.walk())
    for window in added_windows:
        added.extend(window.root.walk())
    return pairs, removed, added


@dataclass(frozen=True)
class MergedWidget:
    """One node of the merged tree; exactly one source widget per side."""

    status: WidgetStatus
    old_id: str | None
    new_id: str | None
    widget_class: str
    properties: Mapping[str, str]
    handlers: tuple[MethodSig, ...]
    children: tuple["MergedWidget", ...] = ()
    screenshot: str | None = None

    @property
    def merged_id(self) -> str:
        return f"new:{self.new_id}" if self.new_id is not None else f"old:{self.old_id}"

    def walk(self) -> Iterator["MergedWidget"]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class MergedWindow:
    title: str
    window_class: str
    status: str
    root: MergedWidget


@dataclass(frozen=True)
class MergedGuiTree:
    windows: tuple[MergedWindow, ...]

    def iter_widgets(self) -> Iterator[MergedWidget]:
        for window in self.windows:
            yield from window.root.walk()


def build_merged_tree(
    pairs: Sequence[tuple[Widget, Widget]],
    removed: Sequence[Widget],
    added: Sequence[Widget],
    old: GuiModel,
    new: GuiModel,
) -> MergedGuiTree:
    """Combine both versions into one tree.

    Matched and added nodes hang under their new-version parent; removed
    nodes hang under their old-version parent. Sibling order follows the
    new version, removed-only nodes slotting in after the last sibling
    that precedes them in old order. Statuses start as added, removed, or
    unchanged; handler-change marking happens during diff propagation.
    """
    old_of_new: dict[str, Widget] = {}
    new_of_old: dict[str, Widget] = {}
    for ow, nw in pairs:
        if ow.id in new_of_old or nw.id in old_of_new:
            raise InconsistentMatch(f"widget matched twice: {ow.id} / {nw.id}")
        new_of_old[ow.id] = nw
        old_of_new[nw.id] = ow
    removed_ids = {w.id for w in removed}
    added_ids = {w.id for w in added}
    for wid in removed_ids & new_of_old.keys():
        raise InconsistentMatch(f"widget both paired and removed: {wid}")
    for wid in added_ids & old_of_new.keys():
        raise InconsistentMatch(f"widget both paired and added: {wid}")

    def merge_removed(ow: Widget) -> MergedWidget:
        children = tuple(
            merge_removed(c) for c in ow.children if c.id in removed_ids
        )
        return MergedWidget(
            status=WidgetStatus.REMOVED,
            old_id=ow.id,
            new_id=None,
            widget_class=ow.widget_class,
            properties=dict(ow.properties),
            handlers=ow.handlers,
            children=children,
            screenshot=ow.screenshot,
        )

    def merge_new(nw: Widget) -> MergedWidget:
        ow = old_of_new.get(nw.id)
        base: list[tuple[MergedWidget, int | None]] = []
        for child in nw.children:
            merged_child = merge_new(child)
            old_child = old_of_new.get(child.id)
            old_pos = None
            if ow is not None and old_child is not None:
                old_pos = _index_in(ow.children, old_child.id)
            base.append((merged_child, old_pos))
        if ow is not None:
            for pos, old_child in enumerate(ow.children):
                if old_child.id in removed_ids:
                    _insert_by_old_order(base, merge_removed(old_child), pos)
        status = WidgetStatus.UNCHANGED if ow is not None else WidgetStatus.ADDED
        handlers = list(nw.handlers)
        if ow is not None:
            handlers.extend(h for h in ow.handlers if h not in handlers)
        return MergedWidget(
            status=status,
            old_id=ow.id if ow is not None else None,
            new_id=nw.id,
            widget_class=nw.widget_class,
            properties=dict(nw.properties),
            handlers=tuple(handlers),
            children=tuple(mw for mw, _ in base),
            screenshot=nw.screenshot if nw.screenshot is not None else (ow.screenshot if ow else None),
        )

    old_window_of_root = {w.root.id: w for w in old.windows}
    windows: list[tuple[MergedWindow, int | None]] = []
    for new_window in new.windows:
        root = merge_new(new_window.root)
        matched_old = old_of_new.get(new_window.root.id)
        status = WINDOW_MATCHED if matched_old is not None else WINDOW_ADDED
        old_pos = None
        if matched_old is not None:
            old_pos = _index_in_windows(old.windows, matched_old.id)
        windows.append(
            (
                MergedWindow(
                    title=new_window.title,
                    window_class=new_window.window_class,
                    status=status,
                    root=root,
                ),
                old_pos,
            )
        )
    for pos, old_window in enumerate(old.windows):
        if old_window.root.id in removed_ids:
            merged = MergedWindow(
                title=old_window.title,
                window_class=old_window.window_class,
                status=WINDOW_REMOVED,
                root=merge_removed(old_window.root),
            )
            _insert_by_old_order(windows, merged, pos)
    return MergedGuiTree(windows=tuple(mw for mw, _ in windows))


def _index_in(children: Sequence[Widget], wid: str) -> int | None:
    for i, child in enumerate(children):
        if child.id == wid:
            return i
    return None


def _index_in_windows(windows: Sequence[Window], root_id: str) -> int | None:
    for i, window in enumerate(windows):
        if window.root.id == root_id:
            return i
    return None


def _insert_by_old_order(entries: list, item, old_pos: int) -> None:
    """Insert after the last entry whose old position precedes ``old_pos``."""
    insert_at = 0
    for i, (_, pos) in enumerate(entries):
        if pos is not None and pos < old_pos:
            insert_at = i + 1
    entries.insert(insert_at, (item, old_pos))


def with_status(widget: MergedWidget, status: WidgetStatus) -> MergedWidget:
    return replace(widget, status=status)
