export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Short, human-oriented label for a graph node key. */
export function shortLabel(key: string): string {
  const hash = key.indexOf("#");
  if (hash === -1) {
    return key; // abstraction label or super-node id
  }
  const owner = key.slice(0, hash);
  const simpleClass = owner.slice(owner.lastIndexOf(".") + 1);
  const method = key.slice(hash + 1, key.indexOf("("));
  return `${simpleClass}.${method}`;
}
