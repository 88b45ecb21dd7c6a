/** Bootstraps the explorer: fetches the bundle once, then re-renders the
 * panes from immutable data on every state transition. */

import { renderGraph } from "./graph.js";
import {
  ViewState,
  initialState,
  openSourceDiff,
  selectHandler,
  selectWidget,
  toggleCollapse,
} from "./state.js";
import { findMergedWidget, renderProperties, renderTree } from "./tree.js";
import { renderSourceDiff } from "./sourcediff.js";
import { Bundle, parseBundle } from "./types.js";

export function renderApp(bundle: Bundle, state: ViewState): string {
  const title =
    bundle.kind === "comparison"
      ? `${bundle.data.versions.old_label} → ${bundle.data.versions.new_label}`
      : bundle.data.version_label;
  const collapse =
    bundle.kind === "comparison"
      ? `<label class="toolbar-item"><input type="checkbox" id="collapse-toggle"` +
        `${state.collapseEnabled ? " checked" : ""}> collapse unchanged</label>`
      : "";
  const sourcePanel = state.openSourceDiff
    ? `<section class="pane source-pane" id="source-pane">` +
      renderSourceDiff(bundle, state.openSourceDiff) +
      `</section>`
    : "";
  return (
    `<header><h1>evotrack explorer</h1><span class="bundle-title">${title}</span></header>` +
    `<main>` +
    `<section class="pane tree-pane" id="tree-pane">${renderTree(bundle, state)}</section>` +
    `<section class="pane side">` +
    `<div class="pane props-pane" id="props-pane">${renderProperties(bundle, state)}</div>` +
    `<div class="pane graph-pane" id="graph-pane">` +
    `<div class="toolbar">${collapse}</div>` +
    renderGraph(bundle, state) +
    `</div>` +
    sourcePanel +
    `</section>` +
    `</main>`
  );
}

export function errorBanner(message: string): string {
  return `<div class="error-banner">Could not load bundle: ${message}</div>`;
}

async function fetchBundle(): Promise<Bundle> {
  for (const name of ["/comparison.json", "/exploration.json"]) {
    const response = await fetch(name);
    if (response.ok) {
      return parseBundle(await response.json());
    }
  }
  throw new Error("no comparison.json or exploration.json served at /");
}

export function wire(root: HTMLElement, bundle: Bundle): void {
  let state = initialState();

  const rerender = () => {
    root.innerHTML = renderApp(bundle, state);
  };

  root.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const widgetEl = target.closest("[data-widget]") as HTMLElement | null;
    if (widgetEl) {
      const id = widgetEl.dataset["widget"]!;
      const widget = findMergedWidget(bundle, id);
      if (widget) {
        state = selectWidget(state, { id: widget.id, handlers: widget.handlers });
        rerender();
      }
      return;
    }
    const handlerEl = target.closest("[data-handler]") as HTMLElement | null;
    if (handlerEl && state.selectedWidget) {
      const widget = findMergedWidget(bundle, state.selectedWidget);
      if (widget) {
        state = selectHandler(
          state,
          { id: widget.id, handlers: widget.handlers },
          handlerEl.dataset["handler"]!,
        );
        rerender();
      }
      return;
    }
    const nodeEl = target.closest("[data-node-key]") as HTMLElement | null;
    if (nodeEl) {
      const key = nodeEl.dataset["nodeKey"]!;
      if (key.includes("#")) {
        state = openSourceDiff(state, key);
        rerender();
      }
      return;
    }
  });

  root.addEventListener("change", (event) => {
    const target = event.target as HTMLElement;
    if (target.id === "collapse-toggle") {
      state = toggleCollapse(state);
      rerender();
    }
  });

  rerender();
}

export async function start(root: HTMLElement): Promise<void> {
  try {
    wire(root, await fetchBundle());
  } catch (error) {
    root.innerHTML = errorBanner(error instanceof Error ? error.message : String(error));
  }
}

declare global {
  interface Window {
    evotrackStart?: () => void;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void start(document.getElementById("app")!);
}
