/** Side-by-side method source comparison from the bundle's diff hunks:
 * equal hunks appear on both sides, deletions on the old side only,
 * insertions on the new side only. */

import { esc } from "./html.js";
import { Bundle, Hunk } from "./types.js";

function rows(hunks: Hunk[]): string {
  const out: string[] = [];
  for (const hunk of hunks) {
    for (const line of hunk.lines) {
      const cell = `<td class="code">${esc(line)}</td>`;
      const empty = `<td class="code filler"></td>`;
      if (hunk.op === "equal") {
        out.push(`<tr class="hunk-equal">${cell}${cell}</tr>`);
      } else if (hunk.op === "delete") {
        out.push(`<tr class="hunk-delete">${cell}${empty}</tr>`);
      } else {
        out.push(`<tr class="hunk-insert">${empty}${cell}</tr>`);
      }
    }
  }
  return out.join("");
}

export function renderSourceDiff(bundle: Bundle, sig: string): string {
  if (bundle.kind === "comparison") {
    const hunks = bundle.data.source_diffs[sig];
    if (!hunks) {
      return (
        `<p class="empty-state">No source comparison is available for this ` +
        `method (unchanged, or no recorded sources on both sides).</p>`
      );
    }
    return (
      `<h3 class="source-sig">${esc(sig)}</h3>` +
      `<table class="source-diff">` +
      `<tr><th>${esc(bundle.data.versions.old_label)}</th>` +
      `<th>${esc(bundle.data.versions.new_label)}</th></tr>` +
      rows(hunks) +
      `</table>`
    );
  }
  const view = bundle.data.sources[sig];
  if (!view) {
    return `<p class="empty-state">No source is recorded for this method.</p>`;
  }
  const lines = view.lines
    .map((line) => `<tr class="hunk-equal"><td class="code">${esc(line)}</td></tr>`)
    .join("");
  return (
    `<h3 class="source-sig">${esc(sig)}</h3>` +
    `<p class="source-origin">${esc(view.origin.path)}:` +
    `${view.origin.start_line}-${view.origin.end_line}</p>` +
    `<table class="source-diff">${lines}</table>`
  );
}
