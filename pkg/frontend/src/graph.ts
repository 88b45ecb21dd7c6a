/** The call-graph pane: per-handler diff graphs (optionally condensed)
 * or exploration slices, laid out in deterministic BFS layers.
 *
 * No graph computation happens here beyond display filtering: node and
 * edge sets, statuses, and labels come verbatim from the bundle.
 */

import { esc, shortLabel } from "./html.js";
import { ViewState } from "./state.js";
import { Bundle, CondensedGraph, EdgeStatus, NodeStatus, SliceDiff } from "./types.js";

const NODE_W = 150;
const NODE_H = 34;
const X_GAP = 190;
const Y_GAP = 54;

interface GraphView {
  root: string;
  nodes: { key: string; label: string; status: NodeStatus | null; shape: "plain" | "box" | "super" }[];
  edges: { from: string; to: string; status: EdgeStatus | null }[];
}

function diffView(diff: SliceDiff): GraphView {
  const keys = Object.keys(diff.nodes).sort();
  return {
    root: diff.root,
    nodes: keys.map((key) => ({
      key,
      label: shortLabel(key),
      status: diff.nodes[key] ?? null,
      shape: key.includes("#") ? "plain" : "box",
    })),
    edges: diff.edges.map((e) => ({ from: e.from, to: e.to, status: e.status })),
  };
}

function condensedView(graph: CondensedGraph, root: string): GraphView {
  const visible = Object.keys(graph.visible_nodes)
    .sort()
    .map((key) => ({
      key,
      label: shortLabel(key),
      status: graph.visible_nodes[key] ?? null,
      shape: (key.includes("#") ? "plain" : "box") as "plain" | "box",
    }));
  const supers = graph.super_nodes.map((sn) => ({
    key: sn.id,
    label: sn.label,
    status: null,
    shape: "super" as const,
  }));
  const edges = graph.edges.flatMap((e) =>
    e.statuses.map((status) => ({ from: e.from, to: e.to, status })),
  );
  return { root, nodes: [...visible, ...supers], edges };
}

/** BFS layering from the root; unreachable nodes go to trailing layers. */
function layout(view: GraphView): Map<string, { x: number; y: number }> {
  const adjacency = new Map<string, string[]>();
  for (const edge of view.edges) {
    if (!adjacency.has(edge.from)) adjacency.set(edge.from, []);
    adjacency.get(edge.from)!.push(edge.to);
  }
  for (const targets of adjacency.values()) targets.sort();

  const layerOf = new Map<string, number>();
  const known = new Set(view.nodes.map((n) => n.key));
  if (known.has(view.root)) {
    layerOf.set(view.root, 0);
    const queue = [view.root];
    while (queue.length) {
      const current = queue.shift()!;
      for (const next of adjacency.get(current) ?? []) {
        if (known.has(next) && !layerOf.has(next)) {
          layerOf.set(next, (layerOf.get(current) ?? 0) + 1);
          queue.push(next);
        }
      }
    }
  }
  let maxLayer = -1;
  for (const layer of layerOf.values()) maxLayer = Math.max(maxLayer, layer);
  for (const node of [...view.nodes].sort((a, b) => (a.key < b.key ? -1 : 1))) {
    if (!layerOf.has(node.key)) layerOf.set(node.key, ++maxLayer);
  }

  const positions = new Map<string, { x: number; y: number }>();
  const perLayer = new Map<number, number>();
  for (const node of [...view.nodes].sort((a, b) => (a.key < b.key ? -1 : 1))) {
    const layer = layerOf.get(node.key)!;
    const row = perLayer.get(layer) ?? 0;
    perLayer.set(layer, row + 1);
    positions.set(node.key, { x: 20 + layer * X_GAP, y: 20 + row * Y_GAP });
  }
  return positions;
}

function renderSvg(view: GraphView): string {
  const positions = layout(view);
  let width = 300;
  let height = 120;
  for (const pos of positions.values()) {
    width = Math.max(width, pos.x + NODE_W + 40);
    height = Math.max(height, pos.y + NODE_H + 40);
  }
  const edges = view.edges
    .map((edge) => {
      const a = positions.get(edge.from);
      const b = positions.get(edge.to);
      if (!a || !b) return "";
      const cls = edge.status ? ` edge-${edge.status}` : "";
      return (
        `<line class="graph-edge${cls}" x1="${a.x + NODE_W}" y1="${a.y + NODE_H / 2}"` +
        ` x2="${b.x}" y2="${b.y + NODE_H / 2}"></line>`
      );
    })
    .join("");
  const nodes = view.nodes
    .map((node) => {
      const pos = positions.get(node.key)!;
      const statusCls = node.status ? ` status-${node.status}` : "";
      const shapeCls = node.shape !== "plain" ? ` shape-${node.shape}` : "";
      return (
        `<g class="graph-node${statusCls}${shapeCls}" data-node-key="${esc(node.key)}">` +
        `<title>${esc(node.key)}</title>` +
        `<rect x="${pos.x}" y="${pos.y}" width="${NODE_W}" height="${NODE_H}" rx="6"></rect>` +
        `<text x="${pos.x + NODE_W / 2}" y="${pos.y + NODE_H / 2 + 4}">${esc(node.label)}</text>` +
        `</g>`
      );
    })
    .join("");
  return (
    `<svg class="graph" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">` +
    edges +
    nodes +
    `</svg>`
  );
}

export function renderGraph(bundle: Bundle, state: ViewState): string {
  if (state.selectedHandler === null || state.selectedWidget === null) {
    return `<p class="empty-state">Select a handler to display its call graph.</p>`;
  }
  const handler = state.selectedHandler;
  if (bundle.kind === "comparison") {
    const entry = bundle.data.handler_diffs.find(
      (e) => e.widget === state.selectedWidget && e.handler === handler,
    );
    if (!entry) {
      return `<p class="empty-state">No call-graph diff is available for this handler.</p>`;
    }
    if (state.collapseEnabled) {
      const condensed = bundle.data.condensed.find(
        (e) => e.widget === state.selectedWidget && e.handler === handler,
      );
      if (condensed) {
        return renderSvg(condensedView(condensed.graph, entry.diff.root));
      }
    }
    return renderSvg(diffView(entry.diff));
  }
  const entry = bundle.data.slices.find((e) => e.handler === handler);
  if (!entry) {
    return `<p class="empty-state">This handler was not sliced.</p>`;
  }
  const abstraction = [...new Set(entry.slice.abstraction_edges.map(([, label]) => label))];
  const view: GraphView = {
    root: entry.slice.root,
    nodes: [
      ...entry.slice.app_nodes.map((key) => ({
        key,
        label: shortLabel(key),
        status: null,
        shape: "plain" as const,
      })),
      ...abstraction.sort().map((key) => ({
        key,
        label: key,
        status: null,
        shape: "box" as const,
      })),
    ],
    edges: [
      ...entry.slice.app_edges.map(([from, to]) => ({ from, to, status: null })),
      ...entry.slice.abstraction_edges.map(([from, to]) => ({ from, to, status: null })),
    ],
  };
  return renderSvg(view);
}
