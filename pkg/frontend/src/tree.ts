/** The left-hand widget tree: the merged hierarchy with status colors
 * (comparison) or the plain recorded hierarchy (exploration). */

import { esc } from "./html.js";
import { ViewState } from "./state.js";
import { ArtifactWidget, Bundle, MergedWidget } from "./types.js";

function mergedNode(widget: MergedWidget, state: ViewState): string {
  const selected = state.selectedWidget === widget.merged_id ? " selected" : "";
  const name =
    widget.properties["text"] ??
    widget.properties["name"] ??
    widget.widget_class.split(".").pop() ??
    widget.merged_id;
  const children = widget.children.map((c) => mergedNode(c, state)).join("");
  return (
    `<li><span class="tree-node status-${widget.status}${selected}"` +
    ` data-widget="${esc(widget.merged_id)}" title="${esc(widget.widget_class)}">` +
    `${esc(name)}</span>` +
    (children ? `<ul>${children}</ul>` : "") +
    `</li>`
  );
}

function plainNode(widget: ArtifactWidget, state: ViewState): string {
  const selected = state.selectedWidget === widget.id ? " selected" : "";
  const name =
    widget.properties["text"] ??
    widget.properties["name"] ??
    widget.class.split(".").pop() ??
    widget.id;
  const children = widget.children.map((c) => plainNode(c, state)).join("");
  return (
    `<li><span class="tree-node status-unchanged${selected}"` +
    ` data-widget="${esc(widget.id)}" title="${esc(widget.class)}">` +
    `${esc(name)}</span>` +
    (children ? `<ul>${children}</ul>` : "") +
    `</li>`
  );
}

export function renderTree(bundle: Bundle, state: ViewState): string {
  if (bundle.kind === "comparison") {
    const windows = bundle.data.merged_tree.windows
      .map(
        (w) =>
          `<li class="window window-${esc(w.status)}">` +
          `<span class="window-title">${esc(w.title)}</span>` +
          `<ul>${mergedNode(w.root, state)}</ul></li>`,
      )
      .join("");
    return `<ul class="tree">${windows}</ul>`;
  }
  const windows = bundle.data.gui.windows
    .map(
      (w) =>
        `<li class="window"><span class="window-title">${esc(w.title)}</span>` +
        `<ul>${plainNode(w.root, state)}</ul></li>`,
    )
    .join("");
  return `<ul class="tree">${windows}</ul>`;
}

export function findMergedWidget(
  bundle: Bundle,
  id: string,
): { id: string; handlers: string[]; properties: Record<string, string>; widget_class: string; status: string } | null {
  if (bundle.kind === "comparison") {
    const stack: MergedWidget[] = bundle.data.merged_tree.windows.map((w) => w.root);
    while (stack.length) {
      const widget = stack.pop()!;
      if (widget.merged_id === id) {
        return {
          id: widget.merged_id,
          handlers: widget.handlers,
          properties: widget.properties,
          widget_class: widget.widget_class,
          status: widget.status,
        };
      }
      stack.push(...widget.children);
    }
    return null;
  }
  const stack: ArtifactWidget[] = bundle.data.gui.windows.map((w) => w.root);
  while (stack.length) {
    const widget = stack.pop()!;
    if (widget.id === id) {
      return {
        id: widget.id,
        handlers: widget.handlers,
        properties: widget.properties,
        widget_class: widget.class,
        status: "unchanged",
      };
    }
    stack.push(...widget.children);
  }
  return null;
}

/** Right-hand panel: the selected widget's properties and handler list. */
export function renderProperties(bundle: Bundle, state: ViewState): string {
  if (state.selectedWidget === null) {
    return `<p class="empty-state">Select a widget to inspect its properties.</p>`;
  }
  const widget = findMergedWidget(bundle, state.selectedWidget);
  if (widget === null) {
    return `<p class="empty-state">Unknown widget.</p>`;
  }
  const rows = Object.keys(widget.properties)
    .sort()
    .map(
      (key) =>
        `<tr><td class="prop-key">${esc(key)}</td>` +
        `<td class="prop-value">${esc(widget.properties[key] ?? "")}</td></tr>`,
    )
    .join("");
  const handlers = widget.handlers
    .map((h) => {
      const selected = state.selectedHandler === h ? " selected" : "";
      return (
        `<li><a class="handler-link${selected}" data-handler="${esc(h)}">` +
        `${esc(h)}</a></li>`
      );
    })
    .join("");
  return (
    `<h3>${esc(widget.widget_class)}</h3>` +
    `<p class="widget-status">status: ${esc(widget.status)}</p>` +
    `<table class="props">${rows}</table>` +
    `<h4>handlers</h4>` +
    (handlers ? `<ul class="handlers">${handlers}</ul>` : `<p class="empty-state">none</p>`)
  );
}
