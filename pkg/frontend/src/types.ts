/** Bundle schemas exactly as emitted by the evotrack backend. */

export type WidgetStatus = "added" | "removed" | "handler_changed" | "unchanged";
export type NodeStatus = "added" | "removed" | "changed" | "unchanged";
export type EdgeStatus = "added" | "removed" | "unchanged";
export type HunkOp = "equal" | "insert" | "delete";

export interface MergedWidget {
  merged_id: string;
  status: WidgetStatus;
  old_id: string | null;
  new_id: string | null;
  widget_class: string;
  properties: Record<string, string>;
  handlers: string[];
  screenshot: string | null;
  children: MergedWidget[];
}

export interface MergedWindow {
  title: string;
  window_class: string;
  status: string;
  root: MergedWidget;
}

export interface SliceDiff {
  root: string;
  nodes: Record<string, NodeStatus>;
  edges: { from: string; to: string; status: EdgeStatus }[];
}

export interface SuperNode {
  id: string;
  members: string[];
  label: string;
}

export interface CondensedGraph {
  visible_nodes: Record<string, NodeStatus>;
  super_nodes: SuperNode[];
  edges: { from: string; to: string; statuses: EdgeStatus[] }[];
}

export interface Hunk {
  op: HunkOp;
  lines: string[];
}

export interface ReportCounts {
  added: number;
  removed: number;
  handler_changed: number;
  unchanged: number;
}

export interface FocusEntry {
  window: string;
  path: number[];
  status: WidgetStatus;
  handlers: string[];
}

export interface Issue {
  severity: string;
  code: string;
  message: string;
}

export interface ComparisonBundle {
  versions: { old_label: string; new_label: string };
  merged_tree: { windows: MergedWindow[] };
  handler_diffs: { widget: string; handler: string; diff: SliceDiff }[];
  condensed: { widget: string; handler: string; graph: CondensedGraph }[];
  source_diffs: Record<string, Hunk[]>;
  report: { counts: ReportCounts; focus_list: FocusEntry[] };
  warnings: Issue[];
}

export interface ArtifactWidget {
  id: string;
  class: string;
  properties: Record<string, string>;
  handlers: string[];
  screenshot?: string;
  children: ArtifactWidget[];
}

export interface HandlerSliceJson {
  root: string;
  app_nodes: string[];
  app_edges: [string, string][];
  abstraction_edges: [string, string][];
}

export interface SourceView {
  sig: string;
  lines: string[];
  origin: { path: string; start_line: number; end_line: number };
}

export interface ExplorationBundle {
  version_label: string;
  gui: { windows: { title: string; class: string; root: ArtifactWidget }[] };
  slices: { handler: string; slice: HandlerSliceJson }[];
  sources: Record<string, SourceView>;
  warnings: Issue[];
}

export type Bundle =
  | { kind: "comparison"; data: ComparisonBundle }
  | { kind: "exploration"; data: ExplorationBundle };

export function parseBundle(raw: unknown): Bundle {
  if (typeof raw !== "object" || raw === null) {
    throw new Error("bundle is not a JSON object");
  }
  const obj = raw as Record<string, unknown>;
  if ("merged_tree" in obj && "handler_diffs" in obj && "report" in obj) {
    return { kind: "comparison", data: raw as ComparisonBundle };
  }
  if ("gui" in obj && "slices" in obj) {
    return { kind: "exploration", data: raw as ExplorationBundle };
  }
  throw new Error("bundle is neither a comparison nor an exploration bundle");
}
